use serde::Serialize;

use crate::error::{Error, Result};
use crate::market::{CostSpec, DemandSpec, MarketEnvironment};

/// Exact optimal policy for linear demand `P(q) = A - Bq`, uniform costs and no fixed cost.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClosedFormLinearUniform {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub c_bar: f64,
    pub c_hat: f64,
    pub c_l: f64,
    pub p_hat: f64,
    pub q_flat: f64,
    pub welfare: f64,
    /// `τ(p) = tax_slope·p + tax_intercept` on the taxed region.
    pub tax_slope: f64,
    pub tax_intercept: f64,
    /// Admissible cutoffs for the interior-bunching form.
    pub regime: (f64, f64),
    /// The maximiser sits on an end of `regime`.
    pub on_regime_boundary: bool,
    /// `ĉ(c̄)` would be negative and was clamped to zero.
    pub c_hat_clamped: bool,
}

fn slope(alpha: f64) -> f64 {
    2.0 - alpha
}

/// `ĉ(c̄) = ((2s+1)c̄ - 2A)/(2s-1)` with `s = 2 - α`.
pub fn c_hat_of(a: f64, alpha: f64, c_bar: f64) -> f64 {
    let s = slope(alpha);
    ((2.0 * s + 1.0) * c_bar - 2.0 * a) / (2.0 * s - 1.0)
}

fn cubic(a: f64, alpha: f64) -> [f64; 4] {
    let m2 = (alpha - 2.0).powi(2);
    let den = (2.0 * alpha - 3.0).powi(3);
    [
        2.0 * a.powi(3) * (alpha - 2.0) * (4.0 * alpha - 5.0) / (3.0 * den),
        2.0 * a * a * (alpha - 2.0) * (4.0 * alpha * alpha - 14.0 * alpha + 11.0) / den,
        a * m2 * (4.0 * alpha * alpha - 20.0 * alpha + 17.0) / den,
        -m2 * (12.0 * alpha * alpha - 36.0 * alpha + 23.0) / (3.0 * den),
    ]
}

/// Expected welfare of the truncated policy as a cubic in `c̄`.
pub fn welfare_of(a: f64, b: f64, alpha: f64, c_bar: f64) -> f64 {
    let w = cubic(a, alpha);
    (((w[3] * c_bar + w[2]) * c_bar + w[1]) * c_bar + w[0]) / b
}

fn check(a: f64, b: f64, alpha: f64) -> Result<()> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::invalid("demand.b", format!("must be positive, got {b}")));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::invalid("demand.a", format!("closed form needs 0 < A <= 1, got {a}")));
    }
    if a > 2.0 * b {
        return Err(Error::invalid("demand.a", format!("closed form needs A <= 2B, got A={a}, B={b}")));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid("alpha", format!("must lie in [0, 1], got {alpha}")));
    }
    Ok(())
}

impl ClosedFormLinearUniform {
    pub fn new(a: f64, b: f64, alpha: f64) -> Result<Self> {
        check(a, b, alpha)?;
        let s = slope(alpha);
        let lo = 2.0 * a / (2.0 * s + 1.0);
        let hi = a.min(1.0).min(a * (2.0 * s + 1.0) / (4.0 * s));
        let w = cubic(a, alpha);
        let mut candidates = vec![lo, hi];
        let (qa, qb, qc) = (3.0 * w[3], 2.0 * w[2], w[1]);
        let disc = qb * qb - 4.0 * qa * qc;
        if qa.abs() > 1e-300 && disc >= 0.0 {
            let r = disc.sqrt();
            candidates.push((-qb + r) / (2.0 * qa));
            candidates.push((-qb - r) / (2.0 * qa));
        } else if qa.abs() <= 1e-300 && qb != 0.0 {
            candidates.push(-qc / qb);
        }
        let c_bar = candidates
            .into_iter()
            .filter(|c| (lo..=hi).contains(c))
            .max_by(|x, y| welfare_of(a, b, alpha, *x).total_cmp(&welfare_of(a, b, alpha, *y)))
            .unwrap_or(hi);
        let raw_hat = c_hat_of(a, alpha, c_bar);
        let c_hat = raw_hat.max(0.0);
        let on_boundary = (c_bar - lo).abs() < 1e-12 || (c_bar - hi).abs() < 1e-12;
        Ok(Self {
            a,
            b,
            alpha,
            c_bar,
            c_hat,
            c_l: 0.0,
            p_hat: 0.5 * (c_hat + c_bar),
            q_flat: s * (c_bar - c_hat) / b,
            welfare: welfare_of(a, b, alpha, c_bar),
            tax_slope: 2.0 * s - 1.0,
            tax_intercept: a - 2.0 * s * c_bar,
            regime: (lo, hi),
            on_regime_boundary: on_boundary,
            c_hat_clamped: raw_hat < 0.0,
        })
    }

    /// Reads `A`, `B` and `α` off a linear-uniform environment without fixed cost.
    pub fn from_env(env: &MarketEnvironment) -> Result<Self> {
        let DemandSpec::Linear { a, b } = *env.demand.spec() else {
            return Err(Error::invalid("demand.family", "closed form needs linear demand"));
        };
        if *env.cost.spec() != CostSpec::Uniform {
            return Err(Error::invalid("cost.family", "closed form needs uniform costs"));
        }
        if env.k != 0.0 {
            return Err(Error::invalid("k", "closed form needs k = 0"));
        }
        Self::new(a, b, env.alpha)
    }

    pub fn q(&self, c: f64) -> f64 {
        if c > self.c_bar {
            0.0
        } else if c < self.c_hat {
            self.q_flat
        } else {
            slope(self.alpha) * (self.c_bar - c) / self.b
        }
    }

    pub fn pi(&self, c: f64) -> f64 {
        let s = slope(self.alpha);
        if c > self.c_bar {
            0.0
        } else if c < self.c_hat {
            s * (self.c_bar - self.c_hat).powi(2) / (2.0 * self.b) + self.q_flat * (self.c_hat - c)
        } else {
            s * (self.c_bar - c).powi(2) / (2.0 * self.b)
        }
    }

    pub fn p_star(&self, c: f64) -> f64 {
        if c > self.c_bar {
            self.a
        } else if c < self.c_hat {
            self.p_hat
        } else {
            0.5 * (c + self.c_bar)
        }
    }

    pub fn consumer_price(&self, c: f64) -> f64 {
        self.a - self.b * self.q(c)
    }

    pub fn tau(&self, p: f64) -> f64 {
        if p <= self.p_hat {
            0.0
        } else if p <= self.c_bar {
            self.tax_slope * p + self.tax_intercept
        } else {
            self.a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn printed_cubic(alpha: f64, c: f64) -> f64 {
        let a = alpha;
        (1.0 - c) * (2.0 - a) * (8.0 * a - 10.0 - c * (2.0 - a) * (-28.0 + 24.0 * a + (23.0 - 12.0 * a * (3.0 - a)) * c))
            / (3.0 * (3.0 - 2.0 * a).powi(3))
    }

    #[test]
    fn alpha_zero() {
        let cf = ClosedFormLinearUniform::new(1.0, 1.0, 0.0).unwrap();
        assert!((cf.c_bar - 11.0 / 23.0).abs() < 1e-14);
        assert!((cf.c_hat - 3.0 / 23.0).abs() < 1e-14);
        assert!((cf.p_hat - 7.0 / 23.0).abs() < 1e-14);
        assert!((cf.q_flat - 16.0 / 23.0).abs() < 1e-14);
        assert!((cf.tax_slope - 3.0).abs() < 1e-15);
        assert!((cf.tax_intercept + 21.0 / 23.0).abs() < 1e-14);
        assert!(!cf.on_regime_boundary && !cf.c_hat_clamped);
    }

    #[test]
    fn alpha_one() {
        let r3 = 3f64.sqrt();
        let cf = ClosedFormLinearUniform::new(1.0, 1.0, 1.0).unwrap();
        assert!((cf.c_bar - (r3 - 1.0)).abs() < 1e-14);
        assert!((cf.c_hat - (3.0 * r3 - 5.0)).abs() < 1e-14);
        assert!((cf.p_hat - (2.0 * r3 - 3.0)).abs() < 1e-14);
        assert!((cf.q_flat - (4.0 - 2.0 * r3)).abs() < 1e-14);
        assert!(cf.tau(cf.p_hat + 1e-12) < 1e-11);
        assert!((welfare_of(1.0, 1.0, 1.0, 0.5) - 1.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn cubic_matches_printed_form() {
        for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
            for c in [0.1, 0.35, 0.5, 0.8] {
                let d = welfare_of(1.0, 1.0, alpha, c) - printed_cubic(alpha, c);
                assert!(d.abs() < 1e-14, "{alpha} {c}: {d}");
            }
        }
        for c in [0.2, 0.6] {
            let one = (1.0 - c) * (c * c + 4.0 * c - 2.0) / 3.0;
            let zero = 4.0 / 81.0 * (1.0_f64 - c).powi(2) * (23.0 * c - 5.0);
            assert!((welfare_of(1.0, 1.0, 1.0, c) - one).abs() < 1e-15);
            assert!((welfare_of(1.0, 1.0, 0.0, c) - zero).abs() < 1e-15);
        }
    }

    #[test]
    fn schedules_are_consistent() {
        let cf = ClosedFormLinearUniform::new(0.9, 0.7, 0.4).unwrap();
        for i in 0..=100 {
            let c = i as f64 / 100.0 * cf.c_bar;
            let q = cf.q(c);
            if q > 0.0 {
                assert!((cf.p_star(c) - c - cf.pi(c) / q).abs() < 1e-12);
                let p = cf.p_star(c);
                assert!((cf.tau(p) - (cf.consumer_price(c) - p)).abs() < 1e-12, "{c}");
            }
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(ClosedFormLinearUniform::new(1.2, 1.0, 0.0).is_err());
        assert!(ClosedFormLinearUniform::new(1.0, 0.4, 0.0).is_err());
        assert!(ClosedFormLinearUniform::new(1.0, 1.0, 1.5).is_err());
    }
}
