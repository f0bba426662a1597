use serde::Serialize;

use crate::error::{Error, Result};
use crate::laissez_faire::{lf_cutoff, monopoly_quantity};
use crate::market::MarketEnvironment;
use crate::numeric::{brent, integrate_pieces, linspace};
use crate::welfare::expected_welfare;

const CELL_TOL: f64 = 1e-13;

/// Which branch of the optimal schedule a cost type falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Segment {
    LaissezFaire,
    Bunch,
    Taxed,
    Excluded,
}

impl Segment {
    pub fn label(self) -> &'static str {
        match self {
            Segment::LaissezFaire => "laissez-faire",
            Segment::Bunch => "bunch",
            Segment::Taxed => "taxed",
            Segment::Excluded => "excluded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyKind {
    FourSegment,
    LaissezFaire,
    Shutdown,
}

impl PolicyKind {
    pub fn label(self) -> &'static str {
        match self {
            PolicyKind::FourSegment => "four-segment",
            PolicyKind::LaissezFaire => "laissez-faire",
            PolicyKind::Shutdown => "shutdown",
        }
    }
}

/// Departures from the single-crossing pattern found while solving.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    /// The no-subsidy slack of the taxed branch never changes sign.
    pub no_crossing: bool,
    /// The slack changes sign more than once; the largest root was used.
    pub multiple_crossings: bool,
    /// The bunching quantity lies below the laissez-faire quantity at `ĉ`.
    pub lf_overlap: bool,
    /// `φ` decreases somewhere below `c̄` and was ironed.
    pub ironed: bool,
}

impl StructureFlags {
    pub fn clean(&self) -> bool {
        !(self.no_crossing || self.multiple_crossings || self.lf_overlap || self.ironed)
    }
}

/// A direct mechanism of the four-segment form, truncated at `c_bar`.
#[derive(Debug, Clone, Serialize)]
pub struct Mechanism {
    pub kind: PolicyKind,
    pub c_l: f64,
    pub c_hat: f64,
    pub c_bar: f64,
    pub q_terminal: f64,
    /// `Γ(ĉ) + β`, fixed by the terminal condition.
    pub gamma_const: f64,
    pub q_flat: f64,
    /// Profit of the cutoff type.
    pub pi_top: f64,
    pub flags: StructureFlags,
    /// Cost intervals on which `φ` is replaced by its pooled value.
    pub pools: Vec<Pool>,
    #[serde(skip)]
    knots: Vec<f64>,
    #[serde(skip)]
    pi_knots: Vec<f64>,
}

/// `q(c̄; k)`: zero when `k = 0`, else the root of `q[P(q) - c̄] = k` on `(0, q̂(c̄)]`.
pub fn terminal_quantity(env: &MarketEnvironment, c_bar: f64) -> Result<f64> {
    if env.k == 0.0 {
        return Ok(0.0);
    }
    let d = &env.demand;
    let q_hat = monopoly_quantity(env, c_bar);
    let surplus = |q: f64| q * (d.p(q) - c_bar) - env.k;
    let top = surplus(q_hat);
    if top < -1e-12 {
        return Err(Error::Infeasible(format!(
            "cutoff {c_bar} cannot cover the fixed cost (best gross profit {})",
            top + env.k
        )));
    }
    if top <= 0.0 {
        return Ok(q_hat);
    }
    Ok(brent(surplus, 0.0, q_hat, 1e-15)?)
}

fn gamma_for(env: &MarketEnvironment, c_bar: f64, q_terminal: f64) -> f64 {
    (env.demand.p(q_terminal) - c_bar) * env.cost.pdf(c_bar) - (1.0 - env.alpha) * env.cost.cdf(c_bar)
}

fn virtual_price(env: &MarketEnvironment, c: f64, gamma: f64) -> f64 {
    let f = env.cost.pdf(c);
    let num = (1.0 - env.alpha) * env.cost.cdf(c) + gamma;
    if f > 0.0 {
        c + num / f
    } else if num > 0.0 {
        f64::INFINITY
    } else if num < 0.0 {
        f64::NEG_INFINITY
    } else {
        c
    }
}

/// `φ(c; c̄) = c + (1-α)F(c)/f(c) + [(P(q(c̄;k)) - c̄)f(c̄) - (1-α)F(c̄)]/f(c)`.
pub fn phi(env: &MarketEnvironment, c: f64, c_bar: f64) -> Result<f64> {
    if env.cost.pdf(c) <= 0.0 {
        return Err(Error::domain("cost with positive density", c, 0.0, 1.0));
    }
    let qt = terminal_quantity(env, c_bar)?;
    Ok(virtual_price(env, c, gamma_for(env, c_bar, qt)))
}

/// A cost interval where the ironed virtual price is constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pool {
    pub lo: f64,
    pub hi: f64,
    pub price: f64,
}

fn ironed_price(env: &MarketEnvironment, c: f64, gamma: f64, pools: &[Pool]) -> f64 {
    match pools.iter().find(|p| p.lo <= c && c <= p.hi) {
        Some(p) => p.price,
        None => virtual_price(env, c, gamma),
    }
}

fn taxed_quantity(env: &MarketEnvironment, c: f64, gamma: f64, pools: &[Pool]) -> f64 {
    env.demand.inverse(ironed_price(env, c, gamma, pools))
}

fn pool_ends(pools: &[Pool]) -> Vec<f64> {
    pools.iter().flat_map(|p| [p.lo, p.hi]).collect()
}

/// Irons `φ` on `[lo, hi]`: the slope of the lower convex hull of `∫ φ dF` in the
/// quantile `F(c)`, on an `n`-node grid with pool ends refined to `φ = pooled value`.
fn iron(env: &MarketEnvironment, lo: f64, hi: f64, gamma: f64, n: usize) -> Vec<Pool> {
    if hi <= lo {
        return Vec::new();
    }
    let x = linspace(lo, hi, n.max(3));
    let v: Vec<f64> = x.iter().map(|&c| virtual_price(env, c, gamma)).collect();
    if v.iter().any(|p| !p.is_finite()) {
        return Vec::new();
    }
    let falls = |a: usize, b: usize| (a..b).any(|j| v[j + 1] < v[j] - 1e-12 * v[j].abs().max(1.0));
    if !falls(0, x.len() - 1) {
        return Vec::new();
    }
    let u: Vec<f64> = x.iter().map(|&c| env.cost.cdf(c)).collect();
    let mut h = vec![0.0; x.len()];
    for j in 1..x.len() {
        h[j] = h[j - 1] + 0.5 * (v[j - 1] + v[j]) * (u[j] - u[j - 1]);
    }
    let mut hull: Vec<usize> = Vec::new();
    for j in 0..x.len() {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (u[b] - u[a]) * (h[j] - h[a]) - (h[b] - h[a]) * (u[j] - u[a]);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(j);
    }
    let phi_at = |c: f64| virtual_price(env, c, gamma);
    let mut pools = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b == a + 1 || !falls(a, b) || u[b] <= u[a] {
            continue;
        }
        let price = (h[b] - h[a]) / (u[b] - u[a]);
        let refine = |lo: usize, hi: usize, fallback: f64| {
            let g = |c: f64| phi_at(c) - price;
            if g(x[lo]) * g(x[hi]) < 0.0 {
                brent(g, x[lo], x[hi], 1e-14).unwrap_or(fallback)
            } else {
                fallback
            }
        };
        let start = if a == 0 { lo } else { refine(a - 1, a + 1, x[a]) };
        let end = if b == x.len() - 1 { hi } else { refine(b - 1, b + 1, x[b]) };
        pools.push(Pool { lo: start, hi: end, price });
    }
    pools
}

/// Number of grid nodes used to iron `φ`.
const IRON_NODES: usize = 4097;

impl Mechanism {
    pub fn segment(&self, c: f64) -> Segment {
        match self.kind {
            PolicyKind::Shutdown => Segment::Excluded,
            PolicyKind::LaissezFaire if c <= self.c_bar => Segment::LaissezFaire,
            PolicyKind::LaissezFaire => Segment::Excluded,
            PolicyKind::FourSegment => {
                if c > self.c_bar {
                    Segment::Excluded
                } else if c < self.c_l {
                    Segment::LaissezFaire
                } else if c < self.c_hat {
                    Segment::Bunch
                } else {
                    Segment::Taxed
                }
            }
        }
    }

    /// `q*(c)`.
    pub fn q(&self, env: &MarketEnvironment, c: f64) -> f64 {
        match self.segment(c) {
            Segment::Excluded => 0.0,
            Segment::LaissezFaire => monopoly_quantity(env, c),
            Segment::Bunch => self.q_flat,
            Segment::Taxed => taxed_quantity(env, c, self.gamma_const, &self.pools),
        }
    }

    /// Virtual price after ironing; `NaN` outside a four-segment mechanism.
    pub fn virtual_price(&self, env: &MarketEnvironment, c: f64) -> f64 {
        if self.kind != PolicyKind::FourSegment {
            return f64::NAN;
        }
        ironed_price(env, c, self.gamma_const, &self.pools)
    }

    fn breaks(&self) -> Vec<f64> {
        let mut b = vec![self.c_l, self.c_hat];
        b.extend(pool_ends(&self.pools));
        b
    }

    /// `Π(c) = Π(c̄) + ∫_c^c̄ q*`.
    pub fn pi(&self, env: &MarketEnvironment, c: f64) -> f64 {
        if c > self.c_bar || self.knots.is_empty() {
            return 0.0;
        }
        let c = c.max(0.0);
        let n = self.knots.len();
        let i = self.knots.partition_point(|&x| x <= c).clamp(1, n - 1);
        let right = self.knots[i];
        self.pi_knots[i] + integrate_pieces(|x| self.q(env, x), c, right, &self.breaks(), CELL_TOL)
    }

    /// Firm price `p*(c) = c + (Π(c) + k)/q*(c)`; `v̄` for excluded types and the left limit
    /// `c̄` at a zero terminal quantity.
    pub fn p_star(&self, env: &MarketEnvironment, c: f64) -> f64 {
        if self.segment(c) == Segment::Excluded {
            return env.demand.v_bar();
        }
        let q = self.q(env, c);
        if q <= 0.0 {
            return c;
        }
        c + (self.pi(env, c) + env.k) / q
    }

    /// `P(q*(c))`.
    pub fn consumer_price(&self, env: &MarketEnvironment, c: f64) -> f64 {
        env.demand.p(self.q(env, c))
    }

    /// `g(c) = q*(c)[P(q*(c)) - c] - k·1{q*>0} - Π(c)`.
    pub fn slack(&self, env: &MarketEnvironment, c: f64) -> f64 {
        let q = self.q(env, c);
        let fixed = if q > 0.0 { env.k } else { 0.0 };
        q * (env.demand.p(q) - c) - fixed - self.pi(env, c)
    }

    /// `Π` on `m` evenly spaced knots over `[0, c̄]`.
    fn tabulate_profit(&mut self, env: &MarketEnvironment, m: usize) {
        if self.c_bar <= 0.0 {
            self.knots.clear();
            self.pi_knots.clear();
            return;
        }
        let knots = linspace(0.0, self.c_bar, m.max(2));
        let mut pi = vec![0.0; knots.len()];
        *pi.last_mut().unwrap() = self.pi_top;
        let breaks = self.breaks();
        for j in (0..knots.len() - 1).rev() {
            pi[j] = pi[j + 1] + integrate_pieces(|x| self.q(env, x), knots[j], knots[j + 1], &breaks, CELL_TOL);
        }
        self.knots = knots;
        self.pi_knots = pi;
    }

    pub fn welfare(&self, env: &MarketEnvironment, tol: f64) -> f64 {
        expected_welfare(env, |c| self.q(env, c), self.c_bar, &self.breaks(), self.pi_top, tol)
    }

    pub(crate) fn laissez_faire(env: &MarketEnvironment, cutoff: f64, grid_n: usize) -> Self {
        let q_top = monopoly_quantity(env, cutoff);
        let mut m = Mechanism {
            kind: PolicyKind::LaissezFaire,
            c_l: cutoff,
            c_hat: cutoff,
            c_bar: cutoff,
            q_terminal: q_top,
            gamma_const: f64::NAN,
            q_flat: q_top,
            pi_top: ((env.demand.p(q_top) - cutoff) * q_top - env.k).max(0.0),
            flags: StructureFlags::default(),
            pools: Vec::new(),
            knots: Vec::new(),
            pi_knots: Vec::new(),
        };
        m.tabulate_profit(env, grid_n);
        m
    }

    pub(crate) fn shutdown() -> Self {
        Mechanism {
            kind: PolicyKind::Shutdown,
            c_l: 0.0,
            c_hat: 0.0,
            c_bar: 0.0,
            q_terminal: 0.0,
            gamma_const: f64::NAN,
            q_flat: 0.0,
            pi_top: 0.0,
            flags: StructureFlags::default(),
            pools: Vec::new(),
            knots: Vec::new(),
            pi_knots: Vec::new(),
        }
    }
}

/// Output of the inner problem for a fixed exclusion cutoff.
#[derive(Debug, Clone, Serialize)]
pub struct InnerSolution {
    pub mechanism: Mechanism,
    pub c_bar: f64,
    pub q_terminal: f64,
    pub gamma_const: f64,
    pub c_hat: f64,
    pub c_l: f64,
    pub c: Vec<f64>,
    pub q_of_c: Vec<f64>,
    pub pi_of_c: Vec<f64>,
    pub welfare: f64,
}

pub(crate) fn check_cutoff(c_bar: f64, cutoff_lf: f64) -> Result<()> {
    if !(c_bar > 0.0 && c_bar <= cutoff_lf + 1e-12) {
        return Err(Error::Infeasible(format!(
            "exclusion cutoff {c_bar} must lie in (0, {cutoff_lf}]"
        )));
    }
    Ok(())
}

/// Builds the truncated mechanism for `c_bar` on an `m`-node scan grid.
pub(crate) fn truncated_mechanism(env: &MarketEnvironment, c_bar: f64, m: usize) -> Result<Mechanism> {
    let q_terminal = terminal_quantity(env, c_bar)?;
    Ok(mechanism_with_terminal(env, c_bar, q_terminal, m))
}

/// Range of terminal quantities at `c̄ = 1` that leave the top type no subsidy:
/// the roots of `q[P(q) - 1] = k` (the lower one is zero when `k = 0`).
pub(crate) fn top_terminal_range(env: &MarketEnvironment) -> Result<(f64, f64)> {
    let d = &env.demand;
    let lo = terminal_quantity(env, 1.0)?;
    let q_hat = monopoly_quantity(env, 1.0);
    let surplus = |q: f64| q * (d.p(q) - 1.0) - env.k;
    let hi = if surplus(q_hat) <= 0.0 {
        q_hat
    } else {
        brent(surplus, q_hat, d.q_max(), 1e-15)?
    };
    Ok((lo, hi.max(lo)))
}

/// Passes of ironing and cutoff location before giving up on a fixed point.
const IRON_PASSES: usize = 6;

/// The truncated mechanism whose taxed branch ends at `q(c̄) = q_terminal`.
pub(crate) fn mechanism_with_terminal(env: &MarketEnvironment, c_bar: f64, q_terminal: f64, m: usize) -> Mechanism {
    let m = m.max(8);
    let d = &env.demand;
    let gamma = gamma_for(env, c_bar, q_terminal);
    let slack_of = |c: f64, q: f64, pi: f64| {
        let fixed = if q > 0.0 { env.k } else { 0.0 };
        q * (d.p(q) - c) - fixed - pi
    };
    let x = linspace(0.0, c_bar, m);

    let locate = |pools: &[Pool]| {
        let qphi = |c: f64| taxed_quantity(env, c, gamma, pools);
        let mut pi = vec![0.0; m];
        for j in (0..m - 1).rev() {
            pi[j] = pi[j + 1] + integrate_pieces(qphi, x[j], x[j + 1], &pool_ends(pools), CELL_TOL);
        }
        let g: Vec<f64> = (0..m - 1).map(|j| slack_of(x[j], qphi(x[j]), pi[j])).collect();
        let mut flags = StructureFlags::default();
        let crossings = g.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();
        flags.multiple_crossings = crossings > 1;
        let rising = (0..g.len() - 1).rev().find(|&j| g[j] <= 0.0 && g[j + 1] > 0.0);
        let c_hat = match rising {
            Some(j) if g[j] == 0.0 => x[j],
            Some(j) => {
                let right = x[j + 1];
                let pi_right = pi[j + 1];
                let ends = pool_ends(pools);
                let slack = |c: f64| slack_of(c, qphi(c), pi_right + integrate_pieces(qphi, c, right, &ends, CELL_TOL));
                brent(slack, x[j], right, 1e-14).unwrap_or(0.5 * (x[j] + right))
            }
            None => {
                flags.no_crossing = true;
                if g[g.len() - 1] > 0.0 {
                    0.0
                } else {
                    c_bar
                }
            }
        };
        (c_hat, flags)
    };

    let mut pools: Vec<Pool> = Vec::new();
    let (mut c_hat, mut flags) = locate(&pools);
    for _ in 0..IRON_PASSES {
        let next = iron(env, c_hat, c_bar, gamma, IRON_NODES);
        if next == pools {
            break;
        }
        pools = next;
        (c_hat, flags) = locate(&pools);
    }
    flags.ironed = !pools.is_empty();
    let qphi = |c: f64| taxed_quantity(env, c, gamma, &pools);

    let q_flat = qphi(c_hat);
    let mr = d.marginal_revenue(q_flat);
    // Flat quantity below laissez-faire at ĉ never meets it to the left.
    let c_l = if mr > c_hat {
        flags.lf_overlap = true;
        0.0
    } else {
        mr.max(0.0)
    };

    let mut mech = Mechanism {
        kind: PolicyKind::FourSegment,
        c_l,
        c_hat,
        c_bar,
        q_terminal,
        gamma_const: gamma,
        q_flat,
        pi_top: 0.0,
        flags,
        pools,
        knots: Vec::new(),
        pi_knots: Vec::new(),
    };
    mech.tabulate_profit(env, m);
    mech
}

/// Solves the truncated problem for a fixed exclusion cutoff `c_bar ∈ (0, c̄_LF]`.
pub fn inner_solve(env: &MarketEnvironment, c_bar: f64, grid_n: usize) -> Result<InnerSolution> {
    check_cutoff(c_bar, lf_cutoff(env)?)?;
    let mech = truncated_mechanism(env, c_bar, grid_n)?;
    let welfare = mech.welfare(env, 1e-11);
    let c = linspace(0.0, 1.0, grid_n.max(2));
    let q_of_c = c.iter().map(|&x| mech.q(env, x)).collect();
    let pi_of_c = c.iter().map(|&x| mech.pi(env, x)).collect();
    Ok(InnerSolution {
        c_bar,
        q_terminal: mech.q_terminal,
        gamma_const: mech.gamma_const,
        c_hat: mech.c_hat,
        c_l: mech.c_l,
        mechanism: mech,
        c,
        q_of_c,
        pi_of_c,
        welfare,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden(alpha: f64) -> MarketEnvironment {
        MarketEnvironment::linear_uniform(1.0, 1.0, alpha, 0.0).unwrap()
    }

    #[test]
    fn terminal_quantities() {
        assert_eq!(terminal_quantity(&golden(0.0), 0.5).unwrap(), 0.0);
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.04).unwrap();
        assert!((terminal_quantity(&env, 0.6).unwrap() - 0.2).abs() < 1e-12);
        for c_bar in [0.1, 0.3, 0.5] {
            let q = terminal_quantity(&env, c_bar).unwrap();
            assert!((q * (1.0 - q - c_bar) - 0.04).abs() < 1e-10);
            assert!(q <= monopoly_quantity(&env, c_bar));
        }
        assert!(matches!(terminal_quantity(&env, 0.7), Err(Error::Infeasible(_))));
    }

    #[test]
    fn virtual_price_examples() {
        let c_bar = 11.0 / 23.0;
        let v = phi(&golden(0.0), 0.3, c_bar).unwrap();
        assert!((v - (0.6 + 1.0 / 23.0)).abs() < 1e-14);
        let c_bar = 3f64.sqrt() - 1.0;
        let v = phi(&golden(1.0), c_bar, c_bar).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        // Uniform costs make φ affine with slope 2 - α.
        let env = golden(0.4);
        let slope = phi(&env, 0.5, 0.6).unwrap() - phi(&env, 0.4, 0.6).unwrap();
        assert!((slope - 0.16).abs() < 1e-14);
    }

    #[test]
    fn golden_alpha_zero_inner() {
        let sol = inner_solve(&golden(0.0), 11.0 / 23.0, 1025).unwrap();
        assert!((sol.c_hat - 3.0 / 23.0).abs() < 1e-9, "{}", sol.c_hat);
        assert!((sol.mechanism.q_flat - 16.0 / 23.0).abs() < 1e-9);
        assert_eq!(sol.c_l, 0.0);
        assert!(sol.mechanism.flags.clean());
    }

    #[test]
    fn golden_alpha_one_inner_welfare() {
        let c_bar = 3f64.sqrt() - 1.0;
        let sol = inner_solve(&golden(1.0), c_bar, 1025).unwrap();
        assert!((sol.c_hat - (3.0 * 3f64.sqrt() - 5.0)).abs() < 1e-9);
        let w = (1.0 - c_bar) * (c_bar * c_bar + 4.0 * c_bar - 2.0) / 3.0;
        assert!((sol.welfare - w).abs() < 1e-7);
    }

    #[test]
    fn slack_binds_below_c_hat_and_is_positive_above() {
        let env = golden(0.5);
        let sol = inner_solve(&env, 0.6, 513).unwrap();
        let m = &sol.mechanism;
        for c in linspace(0.0, m.c_hat, 50) {
            assert!(m.slack(&env, c).abs() < 1e-8, "{c}");
        }
        for c in linspace(m.c_hat + 0.01, m.c_bar - 0.01, 50) {
            assert!(m.slack(&env, c) > 0.0, "{c}");
        }
        assert!(m.pi(&env, m.c_bar).abs() < 1e-14);
    }

    #[test]
    fn infeasible_cutoff_is_rejected() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.04).unwrap();
        assert!(inner_solve(&env, 0.65, 257).is_err());
        assert!(inner_solve(&env, 0.0, 257).is_err());
    }

    #[test]
    fn ironing_flattens_a_falling_virtual_price() {
        use crate::market::{CostDistribution, CostSpec, DemandCurve, DemandSpec};
        let d = DemandCurve::new(DemandSpec::Linear { a: 1.6, b: 1.8 }).unwrap();
        let c = CostDistribution::new(CostSpec::TruncatedNormal { mean: 0.64, variance: 0.12 }).unwrap();
        let env = MarketEnvironment::new(d, c, 0.95, 0.0).unwrap();
        let gamma = 0.5;
        let pools = iron(&env, 0.0, 1.0, gamma, IRON_NODES);
        assert!(!pools.is_empty());
        let x = linspace(0.0, 1.0, 2001);
        let v: Vec<f64> = x.iter().map(|&c| ironed_price(&env, c, gamma, &pools)).collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0] - 1e-9));
        let mass = |f: &dyn Fn(f64) -> f64| {
            integrate_pieces(|c| f(c) * env.cost.pdf(c), 0.0, 1.0, &pool_ends(&pools), 1e-10)
        };
        let raw = mass(&|c| virtual_price(&env, c, gamma));
        let flat = mass(&|c| ironed_price(&env, c, gamma, &pools));
        assert!((raw - flat).abs() < 1e-5, "{raw} {flat}");
    }

    #[test]
    fn increasing_virtual_price_is_left_alone() {
        assert!(iron(&golden(0.5), 0.0, 0.6, 0.1, IRON_NODES).is_empty());
    }
}
