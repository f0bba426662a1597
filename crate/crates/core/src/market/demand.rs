use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{brent, MonotoneCubic};

pub const DEFAULT_EPSILON: f64 = 1e-6;

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

/// Parameterisation of an inverse demand curve, as written in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DemandSpec {
    /// `P(q) = A - B q`.
    Linear { a: f64, b: f64 },
    /// `P(q) = min{max{θ q^(-1/η) - ε, 0}, v̄}`.
    TruncatedConstantElastic {
        theta: f64,
        eta: f64,
        #[serde(default = "default_epsilon")]
        epsilon: f64,
        v_bar: f64,
    },
    /// `P(q) = min{μ - β ln q, v̄}`, zero past `e^(μ/β)`.
    Logarithmic { mu: f64, beta: f64, v_bar: f64 },
    /// Monotone cubic through `(q, p)` samples with `q[0] = 0`, nonincreasing prices and a final price of zero.
    Tabulated { q: Vec<f64>, p: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Linear { a: f64, b: f64 },
    ConstantElastic { theta: f64, eta: f64, epsilon: f64 },
    Logarithmic { mu: f64, beta: f64 },
    Table(MonotoneCubic),
}

/// Inverse demand `P` on `[0, q_max]` with `P(0) = v̄` and `P(q_max) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DemandSpec", into = "DemandSpec")]
pub struct DemandCurve {
    spec: DemandSpec,
    shape: Shape,
    q_max: f64,
    v_bar: f64,
    /// Quantity below which the price is pinned at `v̄` (zero when the curve is not capped).
    q_cap: f64,
}

impl From<DemandCurve> for DemandSpec {
    fn from(curve: DemandCurve) -> Self {
        curve.spec
    }
}

impl TryFrom<DemandSpec> for DemandCurve {
    type Error = Error;

    fn try_from(spec: DemandSpec) -> Result<Self> {
        DemandCurve::new(spec)
    }
}

fn positive(field: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::invalid(field, format!("must be positive and finite, got {v}")))
    }
}

impl DemandCurve {
    pub fn new(spec: DemandSpec) -> Result<Self> {
        let (shape, q_max, v_bar, q_cap) = match &spec {
            DemandSpec::Linear { a, b } => {
                let a = positive("demand.a", *a)?;
                let b = positive("demand.b", *b)?;
                (Shape::Linear { a, b }, a / b, a, 0.0)
            }
            DemandSpec::TruncatedConstantElastic {
                theta,
                eta,
                epsilon,
                v_bar,
            } => {
                let theta = positive("demand.theta", *theta)?;
                let epsilon = positive("demand.epsilon", *epsilon)?;
                let v_bar = positive("demand.v_bar", *v_bar)?;
                if !(eta.is_finite() && *eta > 1.0) {
                    return Err(Error::invalid("demand.eta", format!("must exceed 1, got {eta}")));
                }
                let q_max = (theta / epsilon).powf(*eta);
                let q_cap = (theta / (v_bar + epsilon)).powf(*eta);
                if !q_max.is_finite() {
                    return Err(Error::invalid("demand.epsilon", "quantity domain overflows"));
                }
                let shape = Shape::ConstantElastic {
                    theta,
                    eta: *eta,
                    epsilon,
                };
                (shape, q_max, v_bar, q_cap)
            }
            DemandSpec::Logarithmic { mu, beta, v_bar } => {
                let mu = positive("demand.mu", *mu)?;
                let beta = positive("demand.beta", *beta)?;
                let v_bar = positive("demand.v_bar", *v_bar)?;
                let q_max = (mu / beta).exp();
                if !q_max.is_finite() {
                    return Err(Error::invalid("demand.beta", "quantity domain overflows"));
                }
                let q_cap = ((mu - v_bar) / beta).exp();
                (Shape::Logarithmic { mu, beta }, q_max, v_bar, q_cap)
            }
            DemandSpec::Tabulated { q, p } => {
                if q.first() != Some(&0.0) {
                    return Err(Error::invalid("demand.q", "first quantity must be 0"));
                }
                if p.last() != Some(&0.0) {
                    return Err(Error::invalid("demand.p", "last price must be 0"));
                }
                if p.windows(2).any(|w| !(w[1] <= w[0])) || !(p[0] > 0.0) {
                    return Err(Error::invalid("demand.p", "prices must be nonincreasing from a positive v̄"));
                }
                let table = MonotoneCubic::new(q.clone(), p.clone())
                    .map_err(|e| Error::invalid("demand.q", e.to_string()))?;
                let (q_max, v_bar) = (table.x_max(), p[0]);
                (Shape::Table(table), q_max, v_bar, 0.0)
            }
        };
        Ok(Self {
            spec,
            shape,
            q_max,
            v_bar,
            q_cap,
        })
    }

    pub fn linear(a: f64, b: f64) -> Result<Self> {
        Self::new(DemandSpec::Linear { a, b })
    }

    pub fn spec(&self) -> &DemandSpec {
        &self.spec
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn v_bar(&self) -> f64 {
        self.v_bar
    }

    /// End of the stretch `[0, q_cap]` on which the price is pinned at `v̄`.
    pub fn q_cap(&self) -> f64 {
        self.q_cap
    }

    /// `P(q)` with `q` clamped into the domain.
    pub fn p(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, self.q_max);
        if q <= self.q_cap {
            return self.v_bar;
        }
        let raw = match &self.shape {
            Shape::Linear { a, b } => a - b * q,
            Shape::ConstantElastic {
                theta,
                eta,
                epsilon,
            } => theta * q.powf(-1.0 / eta) - epsilon,
            Shape::Logarithmic { mu, beta } => mu - beta * q.ln(),
            Shape::Table(t) => t.eval(q),
        };
        raw.clamp(0.0, self.v_bar)
    }

    pub fn price(&self, q: f64) -> Result<f64> {
        self.check_q(q)?;
        Ok(self.p(q))
    }

    /// `P'(q)`; zero on a capped stretch.
    pub fn dp(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, self.q_max);
        if q < self.q_cap {
            return 0.0;
        }
        match &self.shape {
            Shape::Linear { b, .. } => -b,
            Shape::ConstantElastic { theta, eta, .. } => -theta / eta * q.powf(-1.0 / eta - 1.0),
            Shape::Logarithmic { beta, .. } => -beta / q.max(f64::MIN_POSITIVE),
            Shape::Table(t) => t.derivative(q),
        }
    }

    pub fn d2p(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, self.q_max);
        if q < self.q_cap {
            return 0.0;
        }
        match &self.shape {
            Shape::Linear { .. } => 0.0,
            Shape::ConstantElastic { theta, eta, .. } => {
                theta / eta * (1.0 + 1.0 / eta) * q.powf(-1.0 / eta - 2.0)
            }
            Shape::Logarithmic { beta, .. } => beta / (q * q).max(f64::MIN_POSITIVE),
            Shape::Table(t) => t.second_derivative(q),
        }
    }

    /// `P(q) + q P'(q)`.
    pub fn marginal_revenue(&self, q: f64) -> f64 {
        self.p(q) + q * self.dp(q)
    }

    /// `P⁻¹(p)` with `p` clamped into `[0, v̄]`; returns 0 at `v̄`.
    pub fn inverse(&self, p: f64) -> f64 {
        if p >= self.v_bar {
            return 0.0;
        }
        if p <= 0.0 {
            return self.q_max;
        }
        match &self.shape {
            Shape::Linear { a, b } => (a - p) / b,
            Shape::ConstantElastic {
                theta,
                eta,
                epsilon,
            } => (theta / (p + epsilon)).powf(*eta),
            Shape::Logarithmic { mu, beta } => ((mu - p) / beta).exp(),
            Shape::Table(t) => {
                brent(|q| t.eval(q) - p, 0.0, self.q_max, 1e-13).unwrap_or_else(|_| {
                    let (qs, _) = t.knots();
                    qs[0]
                })
            }
        }
    }

    pub fn quantity(&self, p: f64) -> Result<f64> {
        if !(0.0..=self.v_bar).contains(&p) {
            return Err(Error::domain("price", p, 0.0, self.v_bar));
        }
        Ok(self.inverse(p))
    }

    /// `V(q) = ∫₀^q P` with `q` clamped into the domain.
    pub fn value(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, self.q_max);
        if q <= self.q_cap {
            return self.v_bar * q;
        }
        let head = self.v_bar * self.q_cap;
        match &self.shape {
            Shape::Linear { a, b } => a * q - 0.5 * b * q * q,
            Shape::ConstantElastic {
                theta,
                eta,
                epsilon,
            } => {
                let e = 1.0 - 1.0 / eta;
                let g = |x: f64| theta * x.powf(e) / e - epsilon * x;
                head + g(q) - g(self.q_cap)
            }
            Shape::Logarithmic { mu, beta } => {
                let g = |x: f64| {
                    if x <= 0.0 {
                        0.0
                    } else {
                        (mu + beta) * x - beta * x * x.ln()
                    }
                };
                head + g(q) - g(self.q_cap)
            }
            Shape::Table(t) => t.integral_to(q),
        }
    }

    pub fn consumer_value(&self, q: f64) -> Result<f64> {
        self.check_q(q)?;
        Ok(self.value(q))
    }

    fn check_q(&self, q: f64) -> Result<()> {
        if !(0.0..=self.q_max).contains(&q) {
            return Err(Error::domain("quantity", q, 0.0, self.q_max));
        }
        Ok(())
    }
}
