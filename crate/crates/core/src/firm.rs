//! The firm's pricing problem under a given tax schedule.

use rayon::prelude::*;
use serde::Serialize;

use crate::market::MarketEnvironment;
use crate::numeric::{golden_section_max, linspace};
use crate::policy::{RegulationPolicy, Segment};
use crate::tax::TaxSchedule;

pub const MIN_PRICE_GRID: usize = 1024;
/// Half-width of the band around `p̂` counted as bunching.
pub const BUNCH_BAND: f64 = 1e-6;
const INACTIVE_PROFIT: f64 = 1e-14;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BestResponse {
    pub c: f64,
    pub p_opt: f64,
    pub q_opt: f64,
    pub profit: f64,
    pub active: bool,
    pub segment_guess: Segment,
}

fn profit_at(env: &MarketEnvironment, tax: &TaxSchedule, c: f64, p: f64) -> f64 {
    let q = tax.regulated_demand(&env.demand, p);
    if q <= 0.0 {
        return 0.0;
    }
    (p - c) * q - env.k
}

/// Profit-maximising price on a grid over `[0, v̄]` plus the kinks of `tax`, refined
/// by golden section inside the winning bracket. Ties go to the lowest price.
pub fn best_response(env: &MarketEnvironment, tax: &TaxSchedule, c: f64, price_grid_n: usize) -> BestResponse {
    let v_bar = env.demand.v_bar();
    let mut grid = linspace(0.0, v_bar, price_grid_n.max(MIN_PRICE_GRID));
    grid.push(tax.p_hat.clamp(0.0, v_bar));
    if let Some(top) = tax.prohibitive_above {
        grid.push(top.clamp(0.0, v_bar));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let values: Vec<f64> = grid.iter().map(|&p| profit_at(env, tax, c, p)).collect();
    let mut j = 0;
    for i in 1..values.len() {
        if values[i] > values[j] {
            j = i;
        }
    }
    let (mut p_opt, mut best) = (grid[j], values[j]);
    if j > 0 && j + 1 < grid.len() {
        let (x, v) = golden_section_max(|p| profit_at(env, tax, c, p), grid[j - 1], grid[j + 1], 1e-12);
        if v > best + INACTIVE_PROFIT {
            p_opt = x;
            best = v;
        }
    }

    if best <= INACTIVE_PROFIT {
        return BestResponse {
            c,
            p_opt: v_bar,
            q_opt: 0.0,
            profit: 0.0,
            active: false,
            segment_guess: Segment::Excluded,
        };
    }
    let segment_guess = if (p_opt - tax.p_hat).abs() <= BUNCH_BAND && tax.p_hat > 0.0 {
        Segment::Bunch
    } else if p_opt < tax.p_hat || tax.tau(p_opt) == 0.0 {
        Segment::LaissezFaire
    } else {
        Segment::Taxed
    };
    BestResponse {
        c,
        p_opt,
        q_opt: tax.regulated_demand(&env.demand, p_opt),
        profit: best,
        active: true,
        segment_guess,
    }
}

pub fn best_responses(env: &MarketEnvironment, tax: &TaxSchedule, costs: &[f64], price_grid_n: usize) -> Vec<BestResponse> {
    costs
        .par_iter()
        .map(|&c| best_response(env, tax, c, price_grid_n))
        .collect()
}

/// Comparison of simulated best responses with the prices a policy intends.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub price_step: f64,
    pub max_price_deviation: f64,
    pub worst_cost: f64,
    pub max_profit_gap: f64,
    /// Costs where the bunching guess disagrees with `[c_L, ĉ)`.
    pub bunching_mismatches: usize,
    pub bunching_matches: bool,
    pub responses: Vec<BestResponse>,
}

impl AuditReport {
    pub fn within_steps(&self, steps: f64) -> bool {
        self.max_price_deviation < steps * self.price_step
    }
}

pub fn ic_audit(
    env: &MarketEnvironment,
    tax: &TaxSchedule,
    policy: &RegulationPolicy,
    cost_grid_n: usize,
    price_grid_n: usize,
) -> AuditReport {
    let price_grid_n = price_grid_n.max(MIN_PRICE_GRID);
    let costs = linspace(0.0, 1.0, cost_grid_n.max(2));
    let responses = best_responses(env, tax, &costs, price_grid_n);

    let mut max_dev = 0.0_f64;
    let mut worst_cost = 0.0;
    let mut max_gap = 0.0_f64;
    let mut mismatches = 0;
    for r in &responses {
        let c = r.c;
        let planned_q = policy.q(env, c);
        let planned_pi = policy.pi(env, c);
        if planned_q > 1e-12 {
            let dev = (r.p_opt - policy.p_star_at(env, c)).abs();
            if dev > max_dev {
                max_dev = dev;
                worst_cost = c;
            }
        } else if r.active && r.profit > 1e-8 {
            max_dev = f64::INFINITY;
            worst_cost = c;
        }
        max_gap = max_gap.max((r.profit - planned_pi).abs());
        let planned_bunch = policy.segment(c) == Segment::Bunch;
        if planned_bunch != (r.segment_guess == Segment::Bunch) {
            mismatches += 1;
        }
    }
    AuditReport {
        price_step: env.demand.v_bar() / (price_grid_n - 1) as f64,
        max_price_deviation: max_dev,
        worst_cost,
        max_profit_gap: max_gap,
        bunching_mismatches: mismatches,
        bunching_matches: mismatches == 0,
        responses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::outer_solve;
    use crate::tax::build_tax;

    #[test]
    fn hard_cap_binds() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        let r = best_response(&env, &TaxSchedule::hard_cap(0.5, 1.0), 0.2, 4096);
        assert!((r.p_opt - 0.5).abs() < 1e-12);
        assert!((r.q_opt - 0.5).abs() < 1e-12);
        assert!((r.profit - 0.15).abs() < 1e-12);
    }

    #[test]
    fn untaxed_monopoly_price() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        let r = best_response(&env, &TaxSchedule::zero(1.0), 0.5, 4096);
        assert!((r.p_opt - 0.75).abs() < 1e-7);
        assert_eq!(r.segment_guess, Segment::LaissezFaire);
    }

    #[test]
    fn low_cost_types_bunch_at_benchmark() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 1.0, 0.0).unwrap();
        let policy = outer_solve(&env, 513, 65).unwrap();
        let tax = build_tax(&env, &policy).unwrap();
        let r = best_response(&env, &tax, 0.1, 4096);
        assert!((r.p_opt - (2.0 * 3f64.sqrt() - 3.0)).abs() < 1e-6, "{}", r.p_opt);
        assert_eq!(r.segment_guess, Segment::Bunch);
    }

    #[test]
    fn perturbed_tax_is_detected() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        let policy = outer_solve(&env, 513, 65).unwrap();
        let tax = build_tax(&env, &policy).unwrap();
        let clean = ic_audit(&env, &tax, &policy, 129, 4096);
        assert!(clean.within_steps(2.0), "{}", clean.max_price_deviation);
        let bumped = ic_audit(&env, &tax.with_offset(0.01), &policy, 129, 4096);
        assert!(!bumped.within_steps(2.0));
    }
}
