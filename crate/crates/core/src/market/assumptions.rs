use serde::Serialize;

use super::MarketEnvironment;
use crate::numeric::linspace;

/// Verdict plus the worst value of the tested margin (positive is good for every check).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub worst_margin: f64,
}

impl Check {
    fn strict(worst: f64) -> Self {
        Check {
            passed: worst > 1e-13,
            worst_margin: worst,
        }
    }

    fn weak(worst: f64) -> Self {
        Check {
            passed: worst >= -1e-12,
            worst_margin: worst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssumptionReport {
    pub grid_n: usize,
    /// Strict concavity of `q P(q)`: smallest gap between revenue and its chord.
    pub revenue_concave: Check,
    /// `P(0) = v̄` and `P(q_max) = 0`: margin is minus the largest boundary error.
    pub boundary_limits: Check,
    /// Some quantity earns revenue above `k`: margin is `max q P(q) - k`.
    pub revenue_covers_fixed_cost: Check,
    /// Margin is minus the largest increase of `f` between grid neighbours.
    pub density_nonincreasing: Check,
    /// Margin is minus the largest second difference of `ln f`.
    pub log_density_concave: Check,
    /// Margin is minus the largest second difference of `ln P⁻¹` on interior prices.
    pub inverse_demand_log_concave: Check,
}

impl AssumptionReport {
    pub fn standing_assumptions_hold(&self) -> bool {
        self.revenue_concave.passed && self.boundary_limits.passed && self.revenue_covers_fixed_cost.passed
    }

    pub fn prop2_hypotheses(&self) -> bool {
        self.density_nonincreasing.passed
            && self.log_density_concave.passed
            && self.inverse_demand_log_concave.passed
    }
}

pub fn check_assumptions(env: &MarketEnvironment, grid_n: usize) -> AssumptionReport {
    let n = grid_n.max(16);
    let d = &env.demand;
    let prices = linspace(0.0, d.v_bar(), n);
    let qs: Vec<f64> = prices.iter().map(|&p| d.inverse(p)).collect();

    let mut concave = f64::INFINITY;
    for i in 1..n - 1 {
        let (q0, q1, q2) = (qs[i + 1], qs[i], qs[i - 1]);
        let (r0, r1, r2) = (q0 * d.p(q0), q1 * d.p(q1), q2 * d.p(q2));
        let w = (q1 - q0) / (q2 - q0);
        let chord = r0 + w * (r2 - r0);
        let scale = r0.abs().max(r1.abs()).max(r2.abs()).max(1e-300);
        concave = concave.min((r1 - chord) / scale);
    }

    let boundary = (d.p(0.0) - d.v_bar()).abs().max(d.p(d.q_max()).abs());
    let (_, max_rev) = env.max_revenue(n);

    let cs = linspace(0.0, 1.0, n);
    let fs: Vec<f64> = cs.iter().map(|&c| env.cost.pdf(c)).collect();
    let rise = fs
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let log_curv = fs
        .windows(3)
        .filter(|w| w.iter().all(|&f| f > 0.0))
        .map(|w| w[0].ln() - 2.0 * w[1].ln() + w[2].ln())
        .fold(f64::NEG_INFINITY, f64::max);
    let inv_curv = prices[..n - 1]
        .windows(3)
        .map(|w| {
            let l = |p: f64| d.inverse(p).ln();
            l(w[0]) - 2.0 * l(w[1]) + l(w[2])
        })
        .fold(f64::NEG_INFINITY, f64::max);

    AssumptionReport {
        grid_n: n,
        revenue_concave: Check {
            passed: concave > 0.0,
            worst_margin: concave,
        },
        boundary_limits: Check::weak(-boundary),
        revenue_covers_fixed_cost: Check {
            passed: max_rev > env.k,
            worst_margin: max_rev - env.k,
        },
        density_nonincreasing: Check::weak(-rise),
        log_density_concave: Check::weak(-log_curv.max(-f64::MAX)),
        inverse_demand_log_concave: Check::strict(-inv_curv),
    }
}
