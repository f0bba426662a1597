//! Test of whether leaving the monopolist unregulated is optimal.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laissez_faire::{monopoly_quantity, LaissezFaireSchedule};
use crate::market::MarketEnvironment;
use crate::numeric::linspace;

pub const DEFAULT_GATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub location: f64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateReport {
    pub lf_optimal: bool,
    pub c: Vec<f64>,
    /// `M(c) = [P(q_LF(c)) - c] f(c) - (1-α) F(c)` on `[0, c̄_LF]`.
    pub margin_curve: Vec<f64>,
    /// Largest drop of `M` between neighbours; `None` when `M` never decreases.
    pub worst_violation: Option<Violation>,
    pub tolerance_used: f64,
    pub margin_at_zero: f64,
}

/// `M(c)` evaluated with the exact laissez-faire quantity.
pub fn margin(env: &MarketEnvironment, c: f64) -> f64 {
    let q = monopoly_quantity(env, c);
    let markup = if q > 0.0 { env.demand.p(q) - c } else { 0.0 };
    markup * env.cost.pdf(c) - (1.0 - env.alpha) * env.cost.cdf(c)
}

fn ensure_same(env: &MarketEnvironment, lf: &LaissezFaireSchedule) -> Result<()> {
    if lf.fingerprint() != env.fingerprint() {
        return Err(Error::Mismatch(
            "laissez-faire schedule was computed for a different environment".into(),
        ));
    }
    Ok(())
}

pub fn gate(env: &MarketEnvironment, lf: &LaissezFaireSchedule, grid_n: usize, tol: f64) -> Result<GateReport> {
    ensure_same(env, lf)?;
    if !(tol >= 0.0) {
        return Err(Error::invalid("gate_tol", format!("must be nonnegative, got {tol}")));
    }
    let c = linspace(0.0, lf.cutoff_lf, grid_n.max(2));
    let m: Vec<f64> = c.par_iter().map(|&x| margin(env, x)).collect();
    let mut worst: Option<Violation> = None;
    for i in 0..m.len() - 1 {
        let drop = m[i] - m[i + 1];
        if drop > 0.0 && worst.map_or(true, |w| drop > w.magnitude) {
            worst = Some(Violation {
                location: c[i + 1],
                magnitude: drop,
            });
        }
    }
    let lf_optimal = worst.map_or(true, |w| w.magnitude <= tol);
    Ok(GateReport {
        lf_optimal,
        margin_at_zero: m[0],
        c,
        margin_curve: m,
        worst_violation: worst,
        tolerance_used: tol,
    })
}

/// `P(q_LF(c)) - c` on the schedule's grid (zero for excluded types).
pub fn markup_curve(env: &MarketEnvironment, lf: &LaissezFaireSchedule) -> Vec<(f64, f64)> {
    lf.c
        .iter()
        .zip(&lf.q_of_c)
        .map(|(&c, &q)| (c, if q > 0.0 { env.demand.p(q) - c } else { 0.0 }))
        .collect()
}
