//! Demand curves, cost distributions and the regulator's environment.

mod assumptions;
mod config;
mod cost;
mod demand;

use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{golden_section_max, linspace};

pub use assumptions::{check_assumptions, AssumptionReport, Check};
pub use config::{EnvironmentFile, SolverSettings};
pub use cost::{CostDistribution, CostSpec};
pub use demand::{DemandCurve, DemandSpec, DEFAULT_EPSILON};

/// Demand, cost law, welfare weight on profit and fixed cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketEnvironment {
    pub alpha: f64,
    pub k: f64,
    pub demand: DemandCurve,
    pub cost: CostDistribution,
}

impl MarketEnvironment {
    pub fn new(demand: DemandCurve, cost: CostDistribution, alpha: f64, k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid("alpha", format!("must lie in [0, 1], got {alpha}")));
        }
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::invalid("k", format!("must be finite and nonnegative, got {k}")));
        }
        Ok(Self {
            alpha,
            k,
            demand,
            cost,
        })
    }

    /// Linear demand `A - B q` with uniform costs.
    pub fn linear_uniform(a: f64, b: f64, alpha: f64, k: f64) -> Result<Self> {
        Self::new(DemandCurve::linear(a, b)?, CostDistribution::uniform(), alpha, k)
    }

    /// Stable hash of the serialised environment, used to pair derived schedules with their source.
    pub fn fingerprint(&self) -> u64 {
        let text = serde_json::to_string(self).unwrap_or_default();
        let mut h = std::collections::hash_map::DefaultHasher::new();
        text.hash(&mut h);
        h.finish()
    }

    /// Largest gross revenue `max_q q P(q)`, searched on a price grid then refined.
    pub fn max_revenue(&self, grid_n: usize) -> (f64, f64) {
        let d = &self.demand;
        let prices = linspace(0.0, d.v_bar(), grid_n.max(16));
        let rev = |p: f64| p * d.inverse(p);
        let (i, _) = prices
            .iter()
            .enumerate()
            .map(|(i, &p)| (i, rev(p)))
            .fold((0, f64::NEG_INFINITY), |acc, (i, r)| if r > acc.1 { (i, r) } else { acc });
        let lo = prices[i.saturating_sub(1)];
        let hi = prices[(i + 1).min(prices.len() - 1)];
        let (p, r) = golden_section_max(rev, lo, hi, 1e-13);
        (d.inverse(p), r)
    }
}
