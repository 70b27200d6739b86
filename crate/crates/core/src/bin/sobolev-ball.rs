//! Command-line front end. Thread count follows `RAYON_NUM_THREADS`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sobolev_ball::app::{run, Command, OutputFormat, QuadSetting, RunConfig, EXIT_CONFIG};

#[derive(Parser, Debug)]
#[command(name = "sobolev-ball", version, about = "Sobolev orthogonal polynomials on the unit ball")]
struct Cli {
    /// gram | expand | project | kernel | poisson | convergence
    command: Command,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    degree: usize,
    /// `auto` (2N+8) or an exact polynomial degree
    #[arg(long, default_value = "auto")]
    quad: QuadSetting,
    /// Registry function, or Poisson problem for poisson/convergence
    #[arg(long)]
    function: Option<String>,
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    let cfg = RunConfig {
        dim: cli.dim,
        max_degree: cli.degree,
        quad: cli.quad,
        function_name: cli.function,
        format: cli.format,
        output_path: cli.out,
        seed: cli.seed,
        tolerance: cli.tol,
    };
    let report = run(cli.command, &cfg);
    if report.exit_code == 0 {
        println!("{}", report.summary);
    } else {
        eprintln!("{}", report.summary);
    }
    ExitCode::from(report.exit_code as u8)
}
