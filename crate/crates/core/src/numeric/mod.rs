//! Scalar numerical building blocks shared by the solver modules.

mod golden;
mod isotonic;
mod pchip;
mod quadrature;
mod roots;

pub use golden::golden_section_max;
pub use isotonic::nonincreasing_projection;
pub use pchip::MonotoneCubic;
pub use quadrature::{adaptive_simpson, integrate_pieces};
pub use roots::{bisect_predicate, brent, RootError};

/// `n` evenly spaced points covering `[a, b]`, endpoints included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
                .collect()
        }
    }
}
