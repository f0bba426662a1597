//! Unit-tax implementation of a solved policy and the progressive-price-cap checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::market::{DemandCurve, MarketEnvironment};
use crate::numeric::{linspace, MonotoneCubic};
use crate::policy::{PolicyKind, RegulationPolicy};

const TAX_KNOTS: usize = 1025;

#[derive(Debug, Clone)]
enum TaxShape {
    Zero,
    HardCap,
    Affine { slope: f64 },
    Implemented {
        cost_of_price: MonotoneCubic,
        consumer_price_of_cost: MonotoneCubic,
    },
}

/// A price-contingent unit tax `τ(p)`: zero up to `p_hat`, prohibitive above
/// `prohibitive_above`.
#[derive(Debug, Clone)]
pub struct TaxSchedule {
    pub p_hat: f64,
    pub prohibitive_above: Option<f64>,
    pub v_bar: f64,
    /// Additive shift applied on the taxed region.
    pub offset: f64,
    /// `(p, τ(p))` at the interpolation knots.
    pub knots: Vec<(f64, f64)>,
    shape: TaxShape,
}

impl TaxSchedule {
    /// Laissez-faire: no tax at any price.
    pub fn zero(v_bar: f64) -> Self {
        Self {
            p_hat: 0.0,
            prohibitive_above: None,
            v_bar,
            offset: 0.0,
            knots: Vec::new(),
            shape: TaxShape::Zero,
        }
    }

    /// Any price above `cap` is taxed out of the market.
    pub fn hard_cap(cap: f64, v_bar: f64) -> Self {
        Self {
            p_hat: cap,
            prohibitive_above: Some(cap),
            v_bar,
            offset: 0.0,
            knots: Vec::new(),
            shape: TaxShape::HardCap,
        }
    }

    /// `τ(p) = slope·(p - p̂)` above `p̂`.
    pub fn affine(p_hat: f64, slope: f64, v_bar: f64) -> Self {
        Self {
            p_hat,
            prohibitive_above: None,
            v_bar,
            offset: 0.0,
            knots: Vec::new(),
            shape: TaxShape::Affine { slope },
        }
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        for k in &mut self.knots {
            k.1 += offset;
        }
        self
    }

    pub fn is_prohibitive(&self, p: f64) -> bool {
        match self.prohibitive_above {
            Some(top) => p > top,
            None => false,
        }
    }

    pub fn tau(&self, p: f64) -> f64 {
        if p <= self.p_hat {
            return 0.0;
        }
        if self.is_prohibitive(p) {
            return self.v_bar;
        }
        let base = match &self.shape {
            TaxShape::Zero => 0.0,
            TaxShape::HardCap => self.v_bar,
            TaxShape::Affine { slope } => slope * (p - self.p_hat),
            TaxShape::Implemented {
                cost_of_price,
                consumer_price_of_cost,
            } => consumer_price_of_cost.eval(cost_of_price.eval(p)) - p,
        };
        base + self.offset
    }

    /// `P⁻¹(p + τ(p))`, zero once the consumer price reaches `v̄`.
    pub fn regulated_demand(&self, demand: &DemandCurve, p: f64) -> f64 {
        let consumer = p + self.tau(p);
        if consumer >= demand.v_bar() {
            return 0.0;
        }
        demand.inverse(consumer)
    }

    /// Highest firm price with a finite tax.
    pub fn top_price(&self) -> f64 {
        self.prohibitive_above.unwrap_or(self.v_bar)
    }

    pub fn verify_progressive(&self, demand: &DemandCurve, grid_n: usize) -> ProgressivityReport {
        let n = grid_n.max(8);
        let zero_below = linspace(0.0, self.p_hat, n).iter().all(|&p| self.tau(p) == 0.0);

        let top = self.top_price().min(demand.v_bar());
        let mut worst = 0.0_f64;
        let mut strictly_increasing = true;
        if top > self.p_hat {
            let grid: Vec<f64> = linspace(self.p_hat, top, n + 1).into_iter().skip(1).collect();
            let taus: Vec<f64> = grid.iter().map(|&p| self.tau(p)).collect();
            // Continuity from the zero-tax side counts towards monotonicity.
            let mut prev = 0.0;
            for &t in &taus {
                if t <= prev {
                    strictly_increasing = false;
                    worst = worst.max(prev - t);
                }
                prev = t;
            }
        }

        let mut best_demand = 0.0_f64;
        let mut best_price = f64::NAN;
        if demand.v_bar() > self.p_hat {
            for p in linspace(self.p_hat, demand.v_bar(), n + 1).into_iter().skip(1) {
                let q = self.regulated_demand(demand, p);
                if q > best_demand {
                    best_demand = q;
                    best_price = p;
                }
            }
        }
        ProgressivityReport {
            zero_below,
            strictly_increasing,
            worst_monotonicity_violation: worst,
            non_prohibitive: best_demand > 0.0,
            max_regulated_demand: best_demand,
            witness_price: best_price,
        }
    }

    /// `(p, τ(p))` on a uniform grid over `[0, top]`; `None` marks the prohibitive sentinel.
    pub fn sample(&self, grid_n: usize) -> Vec<(f64, Option<f64>)> {
        let top = self.top_price();
        let mut rows: Vec<(f64, Option<f64>)> = linspace(0.0, top, grid_n.max(2))
            .into_iter()
            .map(|p| (p, Some(self.tau(p))))
            .collect();
        if top < self.v_bar {
            rows.push((self.v_bar, None));
        }
        rows
    }
}

/// Verdicts for the three defining clauses of a progressive price cap.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProgressivityReport {
    /// No tax at or below the benchmark price.
    pub zero_below: bool,
    /// Strictly increasing tax on the taxed region.
    pub strictly_increasing: bool,
    pub worst_monotonicity_violation: f64,
    /// Some price above the benchmark keeps positive demand.
    pub non_prohibitive: bool,
    pub max_regulated_demand: f64,
    pub witness_price: f64,
}

impl ProgressivityReport {
    pub fn progressive(&self) -> bool {
        self.zero_below && self.strictly_increasing && self.non_prohibitive
    }
}

/// Inverts `p*` on the taxed region and sets `τ(p) = P(q*(p*⁻¹(p))) - p`.
pub fn build_tax(env: &MarketEnvironment, policy: &RegulationPolicy) -> Result<TaxSchedule> {
    if policy.fingerprint() != env.fingerprint() {
        return Err(Error::Mismatch("policy was solved for a different environment".into()));
    }
    if policy.kind != PolicyKind::FourSegment || !(policy.c_hat < policy.c_bar) {
        return Err(Error::invalid("policy", "no taxed region to implement"));
    }
    let costs = linspace(policy.c_hat, policy.c_bar, TAX_KNOTS);
    let prices: Vec<f64> = costs.iter().map(|&c| policy.p_star_at(env, c)).collect();
    if let Some(i) = prices.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::NotInvertible { at: costs[i + 1] });
    }
    let consumer: Vec<f64> = costs.iter().map(|&c| policy.consumer_price_at(env, c)).collect();
    let knots = prices.iter().zip(&consumer).map(|(&p, &cp)| (p, cp - p)).collect();
    let top = *prices.last().unwrap();
    Ok(TaxSchedule {
        p_hat: prices[0],
        prohibitive_above: Some(top),
        v_bar: env.demand.v_bar(),
        offset: 0.0,
        knots,
        shape: TaxShape::Implemented {
            cost_of_price: MonotoneCubic::new(prices, costs.clone())?,
            consumer_price_of_cost: MonotoneCubic::new(costs, consumer)?,
        },
    })
}

/// The tax that implements any solved policy: the built schedule, no tax under
/// laissez-faire, and a cap at zero for a shut market.
pub fn implementing_tax(env: &MarketEnvironment, policy: &RegulationPolicy) -> Result<TaxSchedule> {
    match policy.kind {
        PolicyKind::FourSegment => build_tax(env, policy),
        PolicyKind::LaissezFaire => Ok(TaxSchedule::zero(env.demand.v_bar())),
        PolicyKind::Shutdown => Ok(TaxSchedule::hard_cap(0.0, env.demand.v_bar())),
    }
}

/// Least-squares line through the finite knots of a schedule on `(lo, hi]`.
pub fn fit_line(knots: &[(f64, f64)], lo: f64, hi: f64) -> Option<(f64, f64)> {
    let pts: Vec<&(f64, f64)> = knots.iter().filter(|(p, _)| *p > lo && *p <= hi).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::outer_solve;

    fn linear() -> DemandCurve {
        DemandCurve::linear(1.0, 1.0).unwrap()
    }

    #[test]
    fn golden_alpha_zero_line() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        let policy = outer_solve(&env, 1025, 129).unwrap();
        let tax = build_tax(&env, &policy).unwrap();
        let (slope, icpt) = fit_line(&tax.knots, tax.p_hat, 11.0 / 23.0).unwrap();
        assert!((slope - 3.0).abs() < 1e-4, "{slope}");
        assert!((icpt + 21.0 / 23.0).abs() < 1e-4, "{icpt}");
        assert_eq!(tax.tau(tax.p_hat), 0.0);
        assert!(tax.tau(tax.p_hat + 1e-9) < 1e-7);
        assert_eq!(tax.tau(0.6), 1.0);
        let report = tax.verify_progressive(&env.demand, 2048);
        assert!(report.progressive(), "{report:?}");
    }

    #[test]
    fn round_trip_on_taxed_region() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.5, 0.0).unwrap();
        let policy = outer_solve(&env, 1025, 65).unwrap();
        let tax = build_tax(&env, &policy).unwrap();
        for &c in policy.c.iter().filter(|&&c| c >= policy.c_hat && c <= policy.c_bar) {
            let q = tax.regulated_demand(&env.demand, policy.p_star_at(&env, c));
            assert!((q - policy.q(&env, c)).abs() < 1e-7, "{c}");
            assert!(tax.tau(policy.p_star_at(&env, c)) >= 0.0);
        }
    }

    #[test]
    fn textbook_caps() {
        let d = linear();
        let soft = TaxSchedule::affine(0.5, 0.5, 1.0);
        assert!((soft.regulated_demand(&d, 0.6) - 0.35).abs() < 1e-12);
        assert!((soft.regulated_demand(&d, 0.3) - 0.7).abs() < 1e-12);
        assert!(soft.verify_progressive(&d, 512).progressive());

        let hard = TaxSchedule::hard_cap(0.5, 1.0);
        let r = hard.verify_progressive(&d, 512);
        assert!(r.zero_below && r.strictly_increasing && !r.non_prohibitive);
        assert_eq!(hard.regulated_demand(&d, 0.51), 0.0);

        let none = TaxSchedule::zero(1.0);
        let r = none.verify_progressive(&d, 512);
        assert!(r.zero_below && !r.strictly_increasing && r.non_prohibitive);
    }

    #[test]
    fn laissez_faire_policy_has_no_taxed_region() {
        let d = DemandCurve::new(crate::market::DemandSpec::TruncatedConstantElastic {
            theta: 1.0,
            eta: 2.0,
            epsilon: 1e-6,
            v_bar: 3.0,
        })
        .unwrap();
        let env = MarketEnvironment::new(d, crate::market::CostDistribution::uniform(), 1.0, 0.5).unwrap();
        let policy = outer_solve(&env, 257, 33).unwrap();
        assert_eq!(policy.kind, PolicyKind::LaissezFaire);
        assert!((policy.c_bar - 0.5).abs() < 1e-5);
        assert!(matches!(build_tax(&env, &policy), Err(Error::Validation { .. })));
        assert_eq!(implementing_tax(&env, &policy).unwrap().tau(1.0), 0.0);
    }

    #[test]
    fn offset_shifts_taxed_region_only() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 1.0, 0.0).unwrap();
        let policy = outer_solve(&env, 513, 65).unwrap();
        let tax = build_tax(&env, &policy).unwrap();
        let bumped = tax.clone().with_offset(0.01);
        assert_eq!(bumped.tau(0.1), 0.0);
        assert!((bumped.tau(0.6) - tax.tau(0.6) - 0.01).abs() < 1e-15);
    }
}
