//! Sobolev coefficients from point values alone, compared with the defining
//! inner product that needs the Laplacian.

use sobolev_ball::{expand, registry_function, sobolev_inner_direct, FunctionInput};

fn main() {
    let d = 2;
    let f = registry_function("exp_x1", d).unwrap();
    let coeffs = expand(&f, d, 6, 30).unwrap();
    for (&idx, &c) in coeffs.entries.iter().filter(|(i, _)| i.n <= 3) {
        let direct = sobolev_inner_direct(&f, &FunctionInput::basis(idx, d), d, 30).unwrap();
        println!("n={} j={} nu={}  derivative-free {c:+.14}  direct {direct:+.14}", idx.n, idx.j, idx.nu);
    }
    let x = [0.5, 0.2];
    println!("f(x) = {:.12}, degree-6 expansion = {:.12}", f.value(&x), coeffs.evaluate(&x));
    println!("{}", coeffs.to_json().unwrap().lines().take(8).collect::<Vec<_>>().join("\n"));
}
