//! Builds the normalized Gram matrix by quadrature through both Laplacian
//! routes and reports the distance from the identity.

use sobolev_ball::{normalized_gram, LiftRoute};

fn main() {
    for (d, n) in [(2, 8), (3, 6)] {
        for route in [LiftRoute::ClosedForm, LiftRoute::RadialOperator] {
            let (indices, gram) = normalized_gram(d, n, 2 * n + 8, route).unwrap();
            let size = indices.len();
            let dev = (0..size)
                .flat_map(|i| (0..size).map(move |k| (i, k)))
                .map(|(i, k)| (gram[(i, k)] - if i == k { 1.0 } else { 0.0 }).abs())
                .fold(0.0, f64::max);
            println!("d={d} N={n} {route:?}: {size} functions, max |G - I| = {dev:.2e}");
        }
    }
}
