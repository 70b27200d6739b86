//! Batch commands behind the `sobolev-ball` binary.
//!
//! Every command writes one output file (two for `poisson`) through a
//! temporary file in the target directory followed by a rename, so a failed
//! run never leaves a partial file. Exit codes: 0 pass, 1 tolerance failure,
//! 2 configuration or runtime error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{
    default_quad_degree, expand, kernel_reproduction_error, normalized_gram, proj_corollary_sampled, LiftRoute,
    SampledFunction,
};
use crate::functions::{poisson_problem, registry_function, FUNCTION_NAMES, POISSON_PROBLEMS};
use crate::poisson::{convergence_report, solve_poisson, sup_error, write_grid_csv};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Gram,
    Expand,
    Project,
    Kernel,
    Poisson,
    Convergence,
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gram" => Self::Gram,
            "expand" => Self::Expand,
            "project" => Self::Project,
            "kernel" => Self::Kernel,
            "poisson" => Self::Poisson,
            "convergence" => Self::Convergence,
            other => return Err(Error::Config(format!("unknown command '{other}'"))),
        })
    }
}

/// `auto` resolves to `2N + 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadSetting {
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for QuadSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Self::Auto);
        }
        s.parse()
            .map(Self::Fixed)
            .map_err(|_| Error::Config(format!("--quad expects 'auto' or an integer, got '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dim: usize,
    pub max_degree: usize,
    pub quad: QuadSetting,
    /// Registry name: a function for `expand`/`project`, a problem for `poisson`/`convergence`.
    pub function_name: Option<String>,
    pub format: OutputFormat,
    pub output_path: PathBuf,
    /// Seeds the spot-check points.
    pub seed: u64,
    pub tolerance: f64,
}

impl RunConfig {
    pub fn new(dim: usize, max_degree: usize, output_path: impl Into<PathBuf>) -> Self {
        Self {
            dim,
            max_degree,
            quad: QuadSetting::Auto,
            function_name: None,
            format: OutputFormat::Json,
            output_path: output_path.into(),
            seed: 0,
            tolerance: 1e-8,
        }
    }

    pub fn quad_degree(&self) -> usize {
        match self.quad {
            QuadSetting::Auto => default_quad_degree(self.max_degree),
            QuadSetting::Fixed(k) => k,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::Dimension(self.dim));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        Ok(())
    }

    fn function_name(&self, allowed: &[&str]) -> Result<&str> {
        let name = self
            .function_name
            .as_deref()
            .ok_or_else(|| Error::Config("--function is required for this command".into()))?;
        if allowed.contains(&name) {
            Ok(name)
        } else {
            Err(Error::Config(format!("unknown function '{name}'; expected one of {}", allowed.join(", "))))
        }
    }
}

/// Outcome of one command: exit code plus a human-readable summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandReport {
    pub exit_code: i32,
    pub summary: String,
}

/// Runs `command`. Errors become exit code 2 with the message as summary.
pub fn run(command: Command, cfg: &RunConfig) -> CommandReport {
    let result = cfg.validate().and_then(|_| match command {
        Command::Gram => cmd_gram(cfg),
        Command::Expand => cmd_expand(cfg),
        Command::Project => cmd_project(cfg),
        Command::Kernel => cmd_kernel(cfg),
        Command::Poisson => cmd_poisson(cfg),
        Command::Convergence => cmd_convergence(cfg),
    });
    result.unwrap_or_else(|e| CommandReport { exit_code: EXIT_CONFIG, summary: format!("error: {e}") })
}

/// Writes `bytes` to `path` via a temporary sibling file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

fn random_ball_points(d: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        if x.iter().map(|c| c * c).sum::<f64>() < 0.95 {
            out.push(x);
        }
    }
    out
}

fn csv_table<T: AsRef<str>>(header: &str, rows: impl IntoIterator<Item = T>) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for row in rows {
        s.push_str(row.as_ref());
        s.push('\n');
    }
    s
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn point_label(x: &[f64]) -> String {
    x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Serialize)]
struct GramReport {
    dim: usize,
    max_degree: usize,
    quad_degree: usize,
    size: usize,
    max_off_diagonal: f64,
    max_diagonal_deviation: f64,
    pass: bool,
}

fn cmd_gram(cfg: &RunConfig) -> Result<CommandReport> {
    let quad = cfg.quad_degree();
    let (indices, gram) = normalized_gram(cfg.dim, cfg.max_degree, quad, LiftRoute::ClosedForm)?;
    let mut off: f64 = 0.0;
    let mut diag: f64 = 0.0;
    for i in 0..gram.nrows() {
        for k in 0..gram.ncols() {
            if i == k {
                diag = diag.max((gram[(i, k)] - 1.0).abs());
            } else {
                off = off.max(gram[(i, k)].abs());
            }
        }
    }
    let report = GramReport {
        dim: cfg.dim,
        max_degree: cfg.max_degree,
        quad_degree: quad,
        size: indices.len(),
        max_off_diagonal: off,
        max_diagonal_deviation: diag,
        pass: off < cfg.tolerance && diag < cfg.tolerance,
    };
    let bytes = match cfg.format {
        OutputFormat::Json => json_bytes(&report)?,
        OutputFormat::Csv => csv_table(
            "dim,max_degree,quad_degree,size,max_off_diagonal,max_diagonal_deviation,pass",
            [format!("{},{},{},{},{},{},{}", report.dim, report.max_degree, quad, report.size, off, diag, report.pass)],
        )
        .into_bytes(),
    };
    write_atomic(&cfg.output_path, &bytes)?;
    Ok(CommandReport {
        exit_code: if report.pass { EXIT_PASS } else { EXIT_TOLERANCE },
        summary: format!(
            "gram d={} N={} size={}: max off-diagonal {:.3e}, max diagonal deviation {:.3e}",
            cfg.dim, cfg.max_degree, report.size, off, diag
        ),
    })
}

fn cmd_expand(cfg: &RunConfig) -> Result<CommandReport> {
    let name = cfg.function_name(FUNCTION_NAMES)?;
    let f = registry_function(name, cfg.dim).ok_or_else(|| Error::Config(format!("unknown function '{name}'")))?;
    let coeffs = expand(&f, cfg.dim, cfg.max_degree, cfg.quad_degree())?;
    let bytes = match cfg.format {
        OutputFormat::Json => {
            let mut s = coeffs.to_json()?;
            s.push('\n');
            s.into_bytes()
        }
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            coeffs.write_csv(&mut buf)?;
            buf
        }
    };
    write_atomic(&cfg.output_path, &bytes)?;
    let residual = random_ball_points(cfg.dim, 100, cfg.seed)
        .iter()
        .map(|x| (f.value(x) - coeffs.evaluate(x)).abs())
        .fold(0.0, f64::max);
    let nonzero = coeffs.entries.values().filter(|c| c.abs() > 1e-12).count();
    Ok(CommandReport {
        exit_code: EXIT_PASS,
        summary: format!(
            "expand {name} d={} N={}: {} coefficients ({nonzero} above 1e-12), sampled truncation residual {:.3e}",
            cfg.dim,
            cfg.max_degree,
            coeffs.entries.len(),
            residual
        ),
    })
}

#[derive(Serialize)]
struct ProjectRow {
    n: usize,
    point: Vec<f64>,
    from_coefficients: f64,
    from_kernel: f64,
    difference: f64,
}

fn cmd_project(cfg: &RunConfig) -> Result<CommandReport> {
    let name = cfg.function_name(FUNCTION_NAMES)?;
    let f = registry_function(name, cfg.dim).ok_or_else(|| Error::Config(format!("unknown function '{name}'")))?;
    let quad = cfg.quad_degree();
    let coeffs = expand(&f, cfg.dim, cfg.max_degree, quad)?;
    let sampled = SampledFunction::new(&f, cfg.dim, quad)?;
    let mut rows = Vec::new();
    for x in random_ball_points(cfg.dim, 5, cfg.seed) {
        for n in 0..=cfg.max_degree {
            let a = coeffs.project_n(n, &x)?;
            let b = proj_corollary_sampled(&sampled, n, &x, quad)?;
            rows.push(ProjectRow { n, point: x.clone(), from_coefficients: a, from_kernel: b, difference: (a - b).abs() });
        }
    }
    let worst = rows.iter().map(|r| r.difference).fold(0.0, f64::max);
    let bytes = match cfg.format {
        OutputFormat::Json => json_bytes(&rows)?,
        OutputFormat::Csv => csv_table(
            "n,point,from_coefficients,from_kernel,difference",
            rows.iter().map(|r| {
                format!("{},{},{},{},{}", r.n, point_label(&r.point), r.from_coefficients, r.from_kernel, r.difference)
            }),
        )
        .into_bytes(),
    };
    write_atomic(&cfg.output_path, &bytes)?;
    Ok(CommandReport {
        exit_code: if worst < cfg.tolerance { EXIT_PASS } else { EXIT_TOLERANCE },
        summary: format!("project {name} d={} N={}: max |coefficient − kernel| {:.3e}", cfg.dim, cfg.max_degree, worst),
    })
}

#[derive(Serialize)]
struct KernelRow {
    n: usize,
    point: Vec<f64>,
    reproduction_error: f64,
}

fn cmd_kernel(cfg: &RunConfig) -> Result<CommandReport> {
    let quad = cfg.quad_degree();
    let mut rows = Vec::new();
    for x in random_ball_points(cfg.dim, 3, cfg.seed) {
        for n in 0..=cfg.max_degree {
            let err = kernel_reproduction_error(n, &x, cfg.dim, quad)?;
            rows.push(KernelRow { n, point: x.clone(), reproduction_error: err });
        }
    }
    let worst = rows.iter().map(|r| r.reproduction_error).fold(0.0, f64::max);
    let bytes = match cfg.format {
        OutputFormat::Json => json_bytes(&rows)?,
        OutputFormat::Csv => csv_table(
            "n,point,reproduction_error",
            rows.iter().map(|r| format!("{},{},{}", r.n, point_label(&r.point), r.reproduction_error)),
        )
        .into_bytes(),
    };
    write_atomic(&cfg.output_path, &bytes)?;
    Ok(CommandReport {
        exit_code: if worst < cfg.tolerance { EXIT_PASS } else { EXIT_TOLERANCE },
        summary: format!("kernel d={} N={}: max reproduction error {:.3e}", cfg.dim, cfg.max_degree, worst),
    })
}

/// Path of the second `poisson` output: `<stem>.grid.csv` or `<stem>.coeffs.json`.
pub fn companion_path(out: &Path, format: OutputFormat) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "poisson".into());
    let suffix = match format {
        OutputFormat::Json => "grid.csv",
        OutputFormat::Csv => "coeffs.json",
    };
    out.with_file_name(format!("{stem}.{suffix}"))
}

fn cmd_poisson(cfg: &RunConfig) -> Result<CommandReport> {
    let name = cfg.function_name(POISSON_PROBLEMS)?;
    let problem = poisson_problem(name, cfg.dim, cfg.max_degree)
        .ok_or_else(|| Error::Config(format!("unknown problem '{name}'")))?
        .with_quad_degree(cfg.quad_degree());
    let solution = solve_poisson(&problem)?;

    let mut json = solution.coeffs.to_json()?;
    json.push('\n');
    let mut grid = Vec::new();
    write_grid_csv(&solution, &mut grid)?;
    let (primary, secondary) = match cfg.format {
        OutputFormat::Json => (json.into_bytes(), grid),
        OutputFormat::Csv => (grid, json.into_bytes()),
    };
    write_atomic(&cfg.output_path, &primary)?;
    write_atomic(&companion_path(&cfg.output_path, cfg.format), &secondary)?;

    let mut summary = format!(
        "poisson {name} d={} N={}: residual_l2 {:.3e}",
        cfg.dim, cfg.max_degree, solution.residual_l2
    );
    let exit_code = match &problem.exact {
        Some(u) => {
            let err = sup_error(&solution, u.as_ref());
            let _ = write!(summary, ", sup error {err:.3e}");
            if err < cfg.tolerance {
                EXIT_PASS
            } else {
                EXIT_TOLERANCE
            }
        }
        None => {
            summary.push_str(" (no exact solution registered; residual only)");
            EXIT_PASS
        }
    };
    Ok(CommandReport { exit_code, summary })
}

#[derive(Serialize)]
struct ConvergenceTable<'a> {
    problem: &'a str,
    dim: usize,
    rows: Vec<crate::poisson::ConvergenceRow>,
}

fn cmd_convergence(cfg: &RunConfig) -> Result<CommandReport> {
    let name = cfg.function_name(POISSON_PROBLEMS)?;
    let problem = poisson_problem(name, cfg.dim, cfg.max_degree)
        .ok_or_else(|| Error::Config(format!("unknown problem '{name}'")))?
        .with_quad_degree(cfg.quad_degree());
    let mut degrees: Vec<usize> = (0..=cfg.max_degree).step_by(2).collect();
    if cfg.max_degree % 2 == 1 {
        degrees.push(cfg.max_degree);
    }
    let rows = convergence_report(&problem, &degrees)?;
    let monotone = rows.windows(2).all(|w| w[1].residual_l2 <= w[0].residual_l2 + 1e-12);
    let bytes = match cfg.format {
        OutputFormat::Json => json_bytes(&ConvergenceTable { problem: name, dim: cfg.dim, rows: rows.clone() })?,
        OutputFormat::Csv => csv_table(
            "degree,sup_error,residual_l2",
            rows.iter().map(|r| {
                let err = r.sup_error.map(|e| e.to_string()).unwrap_or_default();
                format!("{},{},{}", r.degree, err, r.residual_l2)
            }),
        )
        .into_bytes(),
    };
    write_atomic(&cfg.output_path, &bytes)?;
    let mut summary = format!("convergence {name} d={}:", cfg.dim);
    for r in &rows {
        let _ = write!(summary, "\n  N={:>3}  residual {:.3e}", r.degree, r.residual_l2);
        if let Some(e) = r.sup_error {
            let _ = write!(summary, "  sup error {e:.3e}");
        }
    }
    if !monotone {
        summary.push_str("\nresidual sequence is not monotone");
    }
    Ok(CommandReport { exit_code: if monotone { EXIT_PASS } else { EXIT_TOLERANCE }, summary })
}
