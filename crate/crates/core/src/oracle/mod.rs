//! Independent references for the solver: exact linear-uniform formulas and a
//! discretised direct-mechanism optimiser.

mod brute_force;
mod closed_form;

use serde::Serialize;

pub use brute_force::{brute_force_mechanism, GridMechanism, MAX_CELLS};
pub use closed_form::{c_hat_of, welfare_of, ClosedFormLinearUniform};

/// Distance between a grid mechanism and a continuous quantity schedule.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleComparison {
    pub n: usize,
    /// Largest `|q_i - q(c)|` at cell midpoints.
    pub max_q_error: f64,
    /// Reference welfare minus grid welfare.
    pub welfare_gap: f64,
    pub grid_cutoff: f64,
    pub converged: bool,
}

pub fn compare<Q: Fn(f64) -> f64>(grid: &GridMechanism, q: Q, welfare: f64) -> OracleComparison {
    let h = grid.width();
    let max_q_error = grid
        .c
        .iter()
        .zip(&grid.q)
        .map(|(&c, &qi)| (qi - q(c + 0.5 * h)).abs())
        .fold(0.0, f64::max);
    OracleComparison {
        n: grid.n,
        max_q_error,
        welfare_gap: welfare - grid.objective,
        grid_cutoff: grid.exclusion_cutoff(),
        converged: grid.converged,
    }
}
