use rayon::prelude::*;
use serde::Serialize;

use super::mechanism::{
    check_cutoff, mechanism_with_terminal, top_terminal_range, truncated_mechanism, Mechanism, PolicyKind, Segment, StructureFlags};
use crate::error::{Error, Result};
use crate::laissez_faire::{lf_cutoff, lf_welfare};
use crate::market::{check_assumptions, MarketEnvironment, SolverSettings};
use crate::numeric::{golden_section_max, linspace};

const WELFARE_TOL: f64 = 1e-11;
/// Coarse nodes for the terminal quantity when every type can be served.
const TOP_GRID: usize = 9;

/// Record of the search over exclusion cutoffs.
#[derive(Debug, Clone, Serialize)]
pub struct OuterTrace {
    pub cutoff_lf: f64,
    /// `(c̄, W(c̄))` on the coarse grid; infeasible cutoffs carry `-inf`.
    pub grid: Vec<(f64, f64)>,
    pub refined: (f64, f64),
    /// `(q(1), W)` for the best terminal quantity at `c̄ = 1`, when that cutoff is available.
    pub free_top: Option<(f64, f64)>,
    pub lf_welfare: f64,
    pub chosen: PolicyKind,
}

/// The solved regulation: cutoffs, benchmark price and schedules on a uniform cost grid.
#[derive(Debug, Clone, Serialize)]
pub struct RegulationPolicy {
    pub kind: PolicyKind,
    pub c_l: f64,
    pub c_hat: f64,
    pub c_bar: f64,
    pub p_hat: f64,
    pub welfare: f64,
    pub lf_welfare: f64,
    pub flags: StructureFlags,
    pub prop2_hypotheses: bool,
    pub structure_verified: bool,
    pub c: Vec<f64>,
    pub q_star: Vec<f64>,
    pub p_star: Vec<f64>,
    pub pi_star: Vec<f64>,
    pub consumer_price: Vec<f64>,
    pub segments: Vec<Segment>,
    pub mechanism: Mechanism,
    pub trace: OuterTrace,
    #[serde(skip)]
    fingerprint: u64,
}

impl RegulationPolicy {
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn q(&self, env: &MarketEnvironment, c: f64) -> f64 {
        self.mechanism.q(env, c)
    }

    pub fn p_star_at(&self, env: &MarketEnvironment, c: f64) -> f64 {
        self.mechanism.p_star(env, c)
    }

    pub fn pi(&self, env: &MarketEnvironment, c: f64) -> f64 {
        self.mechanism.pi(env, c)
    }

    pub fn consumer_price_at(&self, env: &MarketEnvironment, c: f64) -> f64 {
        self.mechanism.consumer_price(env, c)
    }

    pub fn segment(&self, c: f64) -> Segment {
        self.mechanism.segment(c)
    }

    pub fn slack(&self, env: &MarketEnvironment, c: f64) -> f64 {
        self.mechanism.slack(env, c)
    }

    /// Bunching quantity `P⁻¹(p̂)` (meaningful for the four-segment kind).
    pub fn q_flat(&self) -> f64 {
        self.mechanism.q_flat
    }

    fn assemble(env: &MarketEnvironment, mechanism: Mechanism, welfare: f64, trace: OuterTrace, grid_n: usize, prop2: bool) -> Self {
        let c = linspace(0.0, 1.0, grid_n.max(2));
        let rows: Vec<(f64, f64, f64, f64, Segment)> = c
            .par_iter()
            .map(|&x| {
                let q = mechanism.q(env, x);
                (
                    q,
                    mechanism.p_star(env, x),
                    mechanism.pi(env, x),
                    env.demand.p(q),
                    mechanism.segment(x),
                )
            })
            .collect();
        let p_hat = match mechanism.kind {
            PolicyKind::FourSegment => mechanism.p_star(env, mechanism.c_hat),
            PolicyKind::LaissezFaire => mechanism.p_star(env, mechanism.c_bar),
            PolicyKind::Shutdown => 0.0,
        };
        let flags = mechanism.flags;
        RegulationPolicy {
            kind: mechanism.kind,
            c_l: mechanism.c_l,
            c_hat: mechanism.c_hat,
            c_bar: mechanism.c_bar,
            p_hat,
            welfare,
            lf_welfare: trace.lf_welfare,
            flags,
            prop2_hypotheses: prop2,
            structure_verified: prop2 && flags.clean(),
            q_star: rows.iter().map(|r| r.0).collect(),
            p_star: rows.iter().map(|r| r.1).collect(),
            pi_star: rows.iter().map(|r| r.2).collect(),
            consumer_price: rows.iter().map(|r| r.3).collect(),
            segments: rows.iter().map(|r| r.4).collect(),
            c,
            mechanism,
            trace,
            fingerprint: env.fingerprint(),
        }
    }
}

/// Grid search over `c̄ ∈ (0, c̄_LF]` followed by golden-section refinement; the result is
/// compared with laissez-faire and with shutting the market.
pub fn outer_solve(env: &MarketEnvironment, grid_n: usize, cbar_grid_n: usize) -> Result<RegulationPolicy> {
    let settings = SolverSettings {
        grid: grid_n,
        cbar_grid: cbar_grid_n,
        ..SolverSettings::default()
    };
    solve(env, &settings)
}

pub fn solve(env: &MarketEnvironment, settings: &SolverSettings) -> Result<RegulationPolicy> {
    let cutoff = lf_cutoff(env)?;
    let grid_n = settings.grid;
    let w_lf = lf_welfare(env)?;
    let welfare_at = |c_bar: f64| -> f64 {
        if check_cutoff(c_bar, cutoff).is_err() {
            return f64::NEG_INFINITY;
        }
        truncated_mechanism(env, c_bar, grid_n)
            .map(|m| m.welfare(env, WELFARE_TOL))
            .unwrap_or(f64::NEG_INFINITY)
    };

    let n = settings.cbar_grid.max(3);
    let nodes: Vec<f64> = (1..=n).map(|j| cutoff * j as f64 / n as f64).collect();
    let values: Vec<f64> = nodes.par_iter().map(|&c| welfare_at(c)).collect();
    let grid: Vec<(f64, f64)> = nodes.iter().copied().zip(values.iter().copied()).collect();
    let best = (0..n).fold(0, |b, j| if values[j] > values[b] { j } else { b });

    let mut refined = (nodes[best], values[best]);
    if values[best].is_finite() {
        let lo = if best == 0 { nodes[0] * 1e-6 } else { nodes[best - 1] };
        let hi = nodes[(best + 1).min(n - 1)];
        let (x, w) = golden_section_max(welfare_at, lo, hi, settings.cbar_tol);
        if w > refined.1 {
            refined = (x, w);
        }
    }

    // At c̄ = 1 no type is left to exclude, so the terminal quantity is only bounded by
    // the top type's no-subsidy constraint.
    let free_top = if cutoff >= 1.0 {
        top_terminal_range(env).ok().and_then(|(lo, hi)| {
            let at = |q: f64| mechanism_with_terminal(env, 1.0, q, grid_n).welfare(env, WELFARE_TOL);
            let qs = linspace(lo, hi, TOP_GRID);
            let ws: Vec<f64> = qs.par_iter().map(|&q| at(q)).collect();
            let j = (0..TOP_GRID).fold(0, |b, j| if ws[j] > ws[b] { j } else { b });
            let (x, w) = golden_section_max(at, qs[j.saturating_sub(1)], qs[(j + 1).min(TOP_GRID - 1)], settings.cbar_tol * hi.max(1.0));
            let best = if w > ws[j] { (x, w) } else { (qs[j], ws[j]) };
            best.1.is_finite().then_some(best)
        })
    } else {
        None
    };

    let prop2 = check_assumptions(env, settings.assumption_grid).prop2_hypotheses();
    let top_wins = free_top.is_some_and(|(_, w)| w > refined.1 || !refined.1.is_finite());
    let best_w = if top_wins { free_top.unwrap().1 } else { refined.1 };
    let (mechanism, welfare, chosen) = if best_w.is_finite() && best_w > w_lf && best_w > 0.0 {
        let m = match free_top {
            Some((q, _)) if top_wins => mechanism_with_terminal(env, 1.0, q, grid_n),
            _ => truncated_mechanism(env, refined.0, grid_n)?,
        };
        let w = m.welfare(env, WELFARE_TOL);
        (m, w, PolicyKind::FourSegment)
    } else if w_lf >= 0.0 {
        (Mechanism::laissez_faire(env, cutoff, grid_n), w_lf, PolicyKind::LaissezFaire)
    } else if best_w.is_finite() || w_lf.is_finite() {
        (Mechanism::shutdown(), 0.0, PolicyKind::Shutdown)
    } else {
        return Err(Error::Infeasible("no exclusion cutoff yields a feasible mechanism".into()));
    };
    let trace = OuterTrace {
        cutoff_lf: cutoff,
        grid,
        refined,
        free_top,
        lf_welfare: w_lf,
        chosen,
    };
    Ok(RegulationPolicy::assemble(env, mechanism, welfare, trace, grid_n, prop2))
}

/// `P(q*(c)) - φ(c; c̄*)` on the taxed region, with `φ` ironed where it was pooled.
pub fn mbmc_residual(env: &MarketEnvironment, policy: &RegulationPolicy, c: f64) -> Result<f64> {
    if policy.kind != PolicyKind::FourSegment || c < policy.c_hat || c > policy.c_bar {
        return Err(Error::domain("taxed-region cost", c, policy.c_hat, policy.c_bar));
    }
    let consumer = policy.consumer_price_at(env, c);
    Ok(consumer - policy.mechanism.virtual_price(env, c).min(env.demand.v_bar()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_alpha_zero() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        let p = outer_solve(&env, 1025, 129).unwrap();
        assert_eq!(p.kind, PolicyKind::FourSegment);
        assert!((p.c_bar - 11.0 / 23.0).abs() < 1e-6, "{}", p.c_bar);
        assert!((p.c_hat - 3.0 / 23.0).abs() < 1e-6);
        assert!((p.p_hat - 7.0 / 23.0).abs() < 1e-6);
        assert!(p.welfare > p.lf_welfare);
        assert!(p.structure_verified);
    }

    #[test]
    fn mbmc_residual_vanishes_on_taxed_region() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 1.0, 0.0).unwrap();
        let p = outer_solve(&env, 513, 65).unwrap();
        for c in [p.c_hat, 0.4, p.c_bar] {
            assert!(mbmc_residual(&env, &p, c).unwrap().abs() < 1e-8, "{c}");
        }
        assert!(mbmc_residual(&env, &p, 0.05).is_err());
        assert!(mbmc_residual(&env, &p, 0.9).is_err());
    }

    #[test]
    fn top_type_rent_is_put_to_use() {
        use crate::market::{CostDistribution, DemandCurve, DemandSpec};
        let d = DemandCurve::new(DemandSpec::TruncatedConstantElastic { theta: 1.0, eta: 2.0, epsilon: 1e-6, v_bar: 3.0 })
            .unwrap();
        let env = MarketEnvironment::new(d, CostDistribution::uniform(), 1.0, 0.0).unwrap();
        let p = outer_solve(&env, 1025, 65).unwrap();
        assert_eq!(p.kind, PolicyKind::FourSegment);
        assert!(p.trace.free_top.is_some());
        assert!(p.welfare > p.lf_welfare + 0.1);
        assert!(p.q(&env, 1.0) > 0.5 && p.pi(&env, 1.0).abs() < 1e-12);
        assert!(p.q_star.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
        assert!(p.c.iter().all(|&c| p.slack(&env, c) >= -1e-8 * (1.0 + p.pi(&env, c))));
    }
}

