use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laissez_faire::{gross_profit, monopoly_quantity};
use crate::market::MarketEnvironment;

/// Relative quantity below which a cell counts as excluded.
const EXCLUDED_Q: f64 = 1e-6;
pub const MAX_CELLS: usize = 200;
const DECREMENT_TOL: f64 = 1e-8;
const DUALITY_TOL: f64 = 1e-10;
const PURE_NEWTON: f64 = 0.04;

/// A direct mechanism with quantity constant on each of `n` equal cost cells.
#[derive(Debug, Clone, Serialize)]
pub struct GridMechanism {
    pub n: usize,
    /// Left edges of the cost cells.
    pub c: Vec<f64>,
    pub q: Vec<f64>,
    /// Profit at the left edge of each cell.
    pub pi: Vec<f64>,
    /// No-subsidy slack `q_i[P(q_i) - c_i] - k - Π_i` on active cells.
    pub slack: Vec<f64>,
    pub active_cells: usize,
    pub objective: f64,
    pub newton_steps: usize,
    pub converged: bool,
    pub seed: u64,
}

impl GridMechanism {
    pub fn width(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn q_at(&self, c: f64) -> f64 {
        if !(0.0..=1.0).contains(&c) {
            return 0.0;
        }
        self.q[((c * self.n as f64) as usize).min(self.n - 1)]
    }

    /// Right edge of the last producing cell.
    /// Right end of the last cell whose quantity is not negligible; the barrier keeps
    /// excluded cells marginally positive.
    pub fn exclusion_cutoff(&self) -> f64 {
        let floor = EXCLUDED_Q * self.q.first().map_or(1.0, |q| q.max(1.0));
        let m = self.q[..self.active_cells]
            .iter()
            .position(|&q| q <= floor)
            .unwrap_or(self.active_cells);
        m as f64 / self.n as f64
    }

    pub fn min_slack(&self) -> f64 {
        self.slack[..self.active_cells].iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.q.windows(2).all(|w| w[1] <= w[0])
    }
}

struct Cells {
    dc: f64,
    c: Vec<f64>,
    df: Vec<f64>,
    lin: Vec<f64>,
}

impl Cells {
    fn new(env: &MarketEnvironment, n: usize) -> Self {
        let dc = 1.0 / n as f64;
        let c: Vec<f64> = (0..n).map(|i| i as f64 * dc).collect();
        let mut df = Vec::with_capacity(n);
        let mut lin = Vec::with_capacity(n);
        for &lo in &c {
            let hi = lo + dc;
            let (f_lo, f_hi) = (env.cost.cdf(lo), env.cost.cdf(hi));
            let m1 = env.cost.partial_mean(lo, hi);
            let m2 = hi * (f_hi - f_lo) - m1;
            df.push(f_hi - f_lo);
            lin.push(m1 + (1.0 - env.alpha) * (m2 + dc * f_lo));
        }
        Self { dc, c, df, lin }
    }
}

struct Problem<'a> {
    env: &'a MarketEnvironment,
    cells: &'a Cells,
    m: usize,
}

impl Problem<'_> {
    fn welfare(&self, q: &[f64]) -> f64 {
        let d = &self.env.demand;
        (0..self.m)
            .map(|i| (d.value(q[i]) - self.env.k) * self.cells.df[i] - q[i] * self.cells.lin[i])
            .sum()
    }

    fn tail_sums(&self, q: &[f64]) -> Vec<f64> {
        let mut pi = vec![0.0; self.m];
        let mut acc = 0.0;
        for i in (0..self.m).rev() {
            acc += q[i] * self.cells.dc;
            pi[i] = acc;
        }
        pi
    }

    fn constraints(&self, q: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let d = &self.env.demand;
        let pi = self.tail_sums(q);
        let g = (0..self.m)
            .map(|i| q[i] * (d.p(q[i]) - self.cells.c[i]) - self.env.k - pi[i])
            .collect();
        let gaps = (0..self.m)
            .map(|i| if i + 1 < self.m { q[i] - q[i + 1] } else { q[i] })
            .collect();
        (g, gaps)
    }

    fn barrier(&self, q: &[f64], t: f64) -> f64 {
        let (g, gaps) = self.constraints(q);
        if g.iter().chain(&gaps).any(|v| !(*v > 0.0)) {
            return f64::INFINITY;
        }
        -t * self.welfare(q) - g.iter().map(|v| v.ln()).sum::<f64>() - gaps.iter().map(|v| v.ln()).sum::<f64>()
    }

    fn newton_system(&self, q: &[f64], t: f64) -> (DVector<f64>, DMatrix<f64>) {
        let m = self.m;
        let d = &self.env.demand;
        let dc = self.cells.dc;
        let (g, gaps) = self.constraints(q);
        let mut grad = DVector::zeros(m);
        let mut h = DMatrix::zeros(m, m);
        let mut cum = 0.0;
        let mut cum_sq = vec![0.0; m];
        let mut acc_sq = 0.0;
        for i in 0..m {
            let (p, dp) = (d.p(q[i]), d.dp(q[i]));
            let a = p + q[i] * dp - self.cells.c[i];
            cum += dc / g[i];
            acc_sq += dc * dc / (g[i] * g[i]);
            cum_sq[i] = acc_sq;
            grad[i] = -t * (p * self.cells.df[i] - self.cells.lin[i]) - a / g[i] + cum - 1.0 / gaps[i];
            if i > 0 {
                grad[i] += 1.0 / gaps[i - 1];
            }
            h[(i, i)] += -t * dp * self.cells.df[i] + a * a / (g[i] * g[i]) - (2.0 * dp + q[i] * d.d2p(q[i])) / g[i];
            let cross = -a * dc / (g[i] * g[i]);
            h[(i, i)] += cross;
            for j in i..m {
                h[(i, j)] += cross;
                if j > i {
                    h[(j, i)] += cross;
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                h[(i, j)] += cum_sq[i.min(j)];
            }
        }
        for i in 0..m {
            let w = 1.0 / (gaps[i] * gaps[i]);
            h[(i, i)] += w;
            if i + 1 < m {
                h[(i + 1, i + 1)] += w;
                h[(i, i + 1)] -= w;
                h[(i + 1, i)] -= w;
            }
        }
        (grad, h)
    }

    /// Barrier method from a strictly feasible start; returns the final iterate, the
    /// Newton step count and whether every centring step met its tolerance.
    fn solve(&self, mut q: Vec<f64>, iters: usize) -> (Vec<f64>, usize, bool) {
        let mut t = 1.0 / self.cells.dc;
        let mut steps = 0;
        let mut converged = true;
        loop {
            let mut centred = false;
            for _ in 0..iters {
                let (grad, h) = self.newton_system(&q, t);
                let Some(chol) = h.cholesky() else {
                    break;
                };
                let step = -chol.solve(&grad);
                let slope = grad.dot(&step);
                if -slope / 2.0 < DECREMENT_TOL {
                    centred = true;
                    break;
                }
                let f0 = self.barrier(&q, t);
                // Inside the quadratic region only feasibility is enforced.
                let pure = -slope < PURE_NEWTON;
                let mut s = 1.0;
                let mut moved = false;
                while s > 1e-20 {
                    let trial: Vec<f64> = q.iter().zip(step.iter()).map(|(a, b)| a + s * b).collect();
                    let f = self.barrier(&trial, t);
                    if (pure && f.is_finite()) || f <= f0 + 0.25 * s * slope {
                        q = trial;
                        moved = true;
                        break;
                    }
                    s *= 0.5;
                }
                steps += 1;
                if !moved {
                    // No descent left at working precision.
                    centred = true;
                    break;
                }
            }
            converged &= centred;
            if 2.0 * self.m as f64 / t < DUALITY_TOL {
                break;
            }
            t *= 10.0;
        }
        (q, steps, converged)
    }
}

/// Maximises expected welfare over step mechanisms on `n` cost cells, subject to
/// monotone quantities and no subsidy. The fixed cost makes the set of producing
/// cells a discrete choice, which is scanned.
pub fn brute_force_mechanism(env: &MarketEnvironment, n: usize, iters: usize, seed: u64) -> Result<GridMechanism> {
    if !(2..=MAX_CELLS).contains(&n) {
        return Err(Error::invalid("oracle.n", format!("must lie in [2, {MAX_CELLS}], got {n}")));
    }
    if iters == 0 {
        return Err(Error::invalid("oracle.iters", "must be positive"));
    }
    let cells = Cells::new(env, n);
    // A producing cell needs a strictly profitable anchor at its right edge.
    let m_max = (1..=n)
        .take_while(|&i| gross_profit(env, i as f64 * cells.dc) > env.k)
        .last()
        .unwrap_or(0);
    if m_max == 0 {
        return Err(Error::Infeasible("no cost cell can cover the fixed cost".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta: f64 = rng.gen_range(0.95..0.999);

    let run = |m: usize| -> (Vec<f64>, f64, usize, bool) {
        let problem = Problem { env, cells: &cells, m };
        let start: Vec<f64> = (0..m)
            .map(|i| theta * monopoly_quantity(env, cells.c[i] + cells.dc))
            .collect();
        let (q, steps, ok) = problem.solve(start, iters);
        let w = problem.welfare(&q);
        (q, w, steps, ok)
    };

    let mut best = (m_max, run(m_max));
    if env.k > 0.0 && m_max > 1 {
        let stride = (m_max / 10).max(1);
        let evaluate = |m: usize, best: &mut (usize, (Vec<f64>, f64, usize, bool))| {
            let r = run(m);
            if r.1 > best.1 .1 {
                *best = (m, r);
            }
        };
        let mut m = m_max;
        while m > stride {
            m -= stride;
            evaluate(m, &mut best);
        }
        let centre = best.0;
        for m in centre.saturating_sub(stride - 1).max(1)..=(centre + stride - 1).min(m_max) {
            if m != centre {
                evaluate(m, &mut best);
            }
        }
    }

    let (m, (q_active, objective, steps, converged)) = best;
    let problem = Problem { env, cells: &cells, m };
    let (g, _) = problem.constraints(&q_active);
    let tails = problem.tail_sums(&q_active);
    let mut q = q_active;
    q.resize(n, 0.0);
    let mut pi = tails;
    pi.resize(n, 0.0);
    let mut slack = g;
    slack.resize(n, 0.0);
    Ok(GridMechanism {
        n,
        c: cells.c,
        q,
        pi,
        slack,
        active_cells: m,
        objective,
        newton_steps: steps,
        converged,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ClosedFormLinearUniform;

    #[test]
    fn linear_uniform_matches_closed_form() {
        for alpha in [0.0, 1.0] {
            let env = MarketEnvironment::linear_uniform(1.0, 1.0, alpha, 0.0).unwrap();
            let cf = ClosedFormLinearUniform::new(1.0, 1.0, alpha).unwrap();
            let g = brute_force_mechanism(&env, 50, 200, 7).unwrap();
            assert!(g.converged);
            assert!(g.is_nonincreasing());
            assert!(g.min_slack() >= -1e-8);
            let gap = cf.welfare - g.objective;
            assert!(gap > 0.0 && gap < 1e-3, "{gap}");
            let err = (0..g.n)
                .map(|i| (g.q[i] - cf.q(g.c[i] + 0.5 * g.width())).abs())
                .fold(0.0, f64::max);
            assert!(err < 0.02, "{err}");
        }
    }

    #[test]
    fn fixed_cost_truncates_production() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.5, 0.02).unwrap();
        let g = brute_force_mechanism(&env, 40, 200, 1).unwrap();
        assert!(g.converged);
        assert!(g.min_slack() >= -1e-8);
        assert!(g.exclusion_cutoff() < 0.75);
        assert!(g.q[g.active_cells - 1] > 0.05);
    }

    #[test]
    fn seed_only_moves_the_start() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.5, 0.0).unwrap();
        let a = brute_force_mechanism(&env, 30, 200, 1).unwrap();
        let b = brute_force_mechanism(&env, 30, 200, 2).unwrap();
        assert!((a.objective - b.objective).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_sizes() {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.5, 0.0).unwrap();
        assert!(brute_force_mechanism(&env, 201, 10, 0).is_err());
        assert!(brute_force_mechanism(&env, 1, 10, 0).is_err());
    }
}
