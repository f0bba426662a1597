//! The unregulated monopoly benchmark.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::market::{DemandSpec, MarketEnvironment};
use crate::numeric::{bisect_predicate, brent, linspace, MonotoneCubic};
use crate::welfare::expected_welfare;

/// Profit-maximising quantity `q̂(c)` ignoring the fixed cost: the root of `P + qP' = c`.
pub fn monopoly_quantity(env: &MarketEnvironment, c: f64) -> f64 {
    let d = &env.demand;
    if c >= d.v_bar() {
        return 0.0;
    }
    let c = c.max(0.0);
    match *d.spec() {
        DemandSpec::Linear { a, b } => ((a - c) / (2.0 * b)).max(0.0),
        DemandSpec::TruncatedConstantElastic {
            theta,
            eta,
            epsilon,
            ..
        } => {
            let q = (theta * (1.0 - 1.0 / eta) / (c + epsilon)).powf(eta);
            q.max(d.q_cap())
        }
        DemandSpec::Logarithmic { mu, beta, .. } => {
            let q = ((mu - beta - c) / beta).exp();
            q.max(d.q_cap())
        }
        DemandSpec::Tabulated { .. } => {
            let hi = d.q_max() * (1.0 - 1e-12);
            let mr = |q: f64| d.marginal_revenue(q) - c;
            if mr(hi) >= 0.0 {
                return hi;
            }
            brent(mr, 0.0, hi, 1e-12).unwrap_or(0.0)
        }
    }
}

/// Gross profit `[P(q̂(c)) - c] q̂(c)` before the fixed cost.
pub fn gross_profit(env: &MarketEnvironment, c: f64) -> f64 {
    let q = monopoly_quantity(env, c);
    (env.demand.p(q) - c) * q
}

/// Largest cost type whose gross profit still covers `k`.
pub fn lf_cutoff(env: &MarketEnvironment) -> Result<f64> {
    let k = env.k;
    if k == 0.0 || gross_profit(env, 1.0) >= k {
        return Ok(1.0);
    }
    let top = gross_profit(env, 0.0);
    if top < k {
        return Err(Error::Infeasible(format!(
            "fixed cost {k} exceeds the largest attainable gross profit {top}"
        )));
    }
    Ok(bisect_predicate(|c| gross_profit(env, c) >= k, 0.0, 1.0, 1e-13))
}

/// Laissez-faire schedules sampled on a uniform cost grid.
#[derive(Debug, Clone, Serialize)]
pub struct LaissezFaireSchedule {
    pub cutoff_lf: f64,
    pub c: Vec<f64>,
    pub q_of_c: Vec<f64>,
    pub price_of_c: Vec<f64>,
    pub profit_of_c: Vec<f64>,
    #[serde(skip)]
    fingerprint: u64,
    #[serde(skip)]
    q_rule: Option<MonotoneCubic>,
}

impl LaissezFaireSchedule {
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Off-grid quantity through the stored monotone interpolant; zero above the cutoff.
    pub fn q_at(&self, c: f64) -> f64 {
        if c > self.cutoff_lf {
            return 0.0;
        }
        self.q_rule.as_ref().map_or(0.0, |r| r.eval(c))
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }
}

pub fn lf_schedule(env: &MarketEnvironment, grid_n: usize) -> Result<LaissezFaireSchedule> {
    if grid_n < 64 {
        return Err(Error::invalid("grid", format!("need at least 64 points, got {grid_n}")));
    }
    let cutoff = lf_cutoff(env)?;
    let c = linspace(0.0, 1.0, grid_n);
    let rows: Vec<(f64, f64, f64)> = c
        .par_iter()
        .map(|&ci| {
            if ci > cutoff {
                return (0.0, env.demand.v_bar(), 0.0);
            }
            let q = monopoly_quantity(env, ci);
            let p = env.demand.p(q);
            (q, p, ((p - ci) * q - env.k).max(0.0))
        })
        .collect();
    let mut knots_c: Vec<f64> = c.iter().copied().filter(|&x| x < cutoff).collect();
    knots_c.push(cutoff);
    let q_rule = if knots_c.len() >= 2 {
        let knots_q = knots_c.iter().map(|&x| monopoly_quantity(env, x)).collect();
        MonotoneCubic::new(knots_c, knots_q).ok()
    } else {
        None
    };
    Ok(LaissezFaireSchedule {
        cutoff_lf: cutoff,
        q_of_c: rows.iter().map(|r| r.0).collect(),
        price_of_c: rows.iter().map(|r| r.1).collect(),
        profit_of_c: rows.iter().map(|r| r.2).collect(),
        c,
        fingerprint: env.fingerprint(),
        q_rule,
    })
}

/// Expected weighted surplus under laissez-faire.
pub fn lf_welfare(env: &MarketEnvironment) -> Result<f64> {
    let cutoff = lf_cutoff(env)?;
    let pi_top = (gross_profit(env, cutoff) - env.k).max(0.0);
    Ok(expected_welfare(
        env,
        |c| monopoly_quantity(env, c),
        cutoff,
        &[],
        pi_top,
        1e-11,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::{CostDistribution, DemandCurve};

    fn elastic(eta: f64) -> MarketEnvironment {
        let d = DemandCurve::new(DemandSpec::TruncatedConstantElastic {
            theta: 1.0,
            eta,
            epsilon: 1e-6,
            v_bar: 3.0,
        })
        .unwrap();
        MarketEnvironment::new(d, CostDistribution::uniform(), 1.0, 0.0).unwrap()
    }

    #[test]
    fn linear_quantities() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        assert!((monopoly_quantity(&env, 0.5) - 0.25).abs() < 1e-15);
        assert!((monopoly_quantity(&env, 0.0) - 0.5).abs() < 1e-15);
        assert_eq!(monopoly_quantity(&env, 1.0), 0.0);
    }

    #[test]
    fn constant_elastic_markup() {
        let env = elastic(3.0);
        for c in [0.1, 0.3, 0.7] {
            let q = monopoly_quantity(&env, c);
            let markup = env.demand.p(q) - c;
            assert!((markup - c / 2.0).abs() < 1e-6, "{c}: {markup}");
        }
    }

    #[test]
    fn cutoffs() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(lf_cutoff(&env).unwrap(), 1.0);
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.04).unwrap();
        assert!((lf_cutoff(&env).unwrap() - 0.6).abs() < 1e-10);
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.25).unwrap();
        assert!(lf_cutoff(&env).unwrap() < 1e-9);
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.3).unwrap();
        assert!(matches!(lf_cutoff(&env), Err(Error::Infeasible(_))));
    }

    #[test]
    fn linear_price_schedule() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        let lf = lf_schedule(&env, 1025).unwrap();
        for (c, p) in lf.c.iter().zip(&lf.price_of_c) {
            assert!((p - (1.0 + c) / 2.0).abs() < 1e-14);
        }
        assert_eq!(*lf.q_of_c.last().unwrap(), 0.0);
        assert!((lf.q_at(0.3001) - 0.34995).abs() < 1e-12);
    }

    #[test]
    fn envelope_and_first_order_conditions() {
        for env in [
            MarketEnvironment::linear_uniform(1.0, 1.0, 0.5, 0.02).unwrap(),
            elastic(2.0),
        ] {
            let lf = lf_schedule(&env, 4097).unwrap();
            let h = lf.c[1] - lf.c[0];
            for i in 1..lf.len() - 1 {
                let c = lf.c[i];
                if c < 0.1 {
                    // Constant-elastic profit blows up near zero cost.
                    continue;
                }
                if lf.c[i + 1] >= lf.cutoff_lf {
                    break;
                }
                let q = lf.q_of_c[i];
                let foc = env.demand.marginal_revenue(q) - c;
                assert!(foc.abs() < 1e-9 * (1.0 + q), "{c}: {foc}");
                let slope = (lf.profit_of_c[i + 1] - lf.profit_of_c[i - 1]) / (2.0 * h);
                assert!((slope + q).abs() < 1e-4 * q, "{c}: {slope} vs {q}");
                assert!(lf.q_of_c[i + 1] < q);
                assert!(lf.price_of_c[i + 1] > lf.price_of_c[i]);
                assert!(lf.profit_of_c[i + 1] <= lf.profit_of_c[i]);
            }
        }
    }

    #[test]
    fn profit_hits_fixed_cost_at_cutoff() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.04).unwrap();
        let cut = lf_cutoff(&env).unwrap();
        assert!((gross_profit(&env, cut) - 0.04).abs() < 1e-12);
    }

    #[test]
    fn linear_uniform_welfare() {
        // ∫ [V(q) - cq] dc - (1-α) ∫ q c dc with q = (1-c)/2.
        for alpha in [0.0, 0.5, 1.0] {
            let env = MarketEnvironment::linear_uniform(1.0, 1.0, alpha, 0.0).unwrap();
            let expected = 1.0 / 8.0 - (1.0 - alpha) / 12.0;
            assert!((lf_welfare(&env).unwrap() - expected).abs() < 1e-10);
        }
    }
}
