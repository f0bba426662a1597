use serde::{Deserialize, Serialize};
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::numeric::MonotoneCubic;

/// Parameterisation of the cost-type distribution on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CostSpec {
    Uniform,
    TruncatedNormal { mean: f64, variance: f64 },
    TruncatedExponential { lambda: f64 },
    /// Density samples on knots spanning `[0, 1]`; normalised after interpolation.
    Tabulated { c: Vec<f64>, density: Vec<f64> },
}

#[derive(Debug, Clone)]
enum Law {
    Uniform,
    Normal {
        base: Normal,
        mean: f64,
        variance: f64,
        lower: f64,
        mass: f64,
    },
    Exponential {
        lambda: f64,
        mass: f64,
    },
    Table(MonotoneCubic),
}

/// Distribution `F` of the marginal cost on `[0, 1]` with density `f` and `f'`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "CostSpec", into = "CostSpec")]
pub struct CostDistribution {
    spec: CostSpec,
    law: Law,
}

impl PartialEq for CostDistribution {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl From<CostDistribution> for CostSpec {
    fn from(d: CostDistribution) -> Self {
        d.spec
    }
}

impl TryFrom<CostSpec> for CostDistribution {
    type Error = Error;

    fn try_from(spec: CostSpec) -> Result<Self> {
        CostDistribution::new(spec)
    }
}

impl CostDistribution {
    pub fn new(spec: CostSpec) -> Result<Self> {
        let law = match &spec {
            CostSpec::Uniform => Law::Uniform,
            CostSpec::TruncatedNormal { mean, variance } => {
                if !mean.is_finite() {
                    return Err(Error::invalid("cost.mean", "must be finite"));
                }
                if !(variance.is_finite() && *variance > 0.0) {
                    return Err(Error::invalid("cost.variance", format!("must be positive, got {variance}")));
                }
                let base = Normal::new(*mean, variance.sqrt())
                    .map_err(|e| Error::invalid("cost.variance", e.to_string()))?;
                let lower = base.cdf(0.0);
                let mass = base.cdf(1.0) - lower;
                if !(mass > 1e-300) {
                    return Err(Error::invalid("cost.mean", "no probability mass on [0, 1]"));
                }
                Law::Normal {
                    base,
                    mean: *mean,
                    variance: *variance,
                    lower,
                    mass,
                }
            }
            CostSpec::TruncatedExponential { lambda } => {
                if !(lambda.is_finite() && lambda.abs() > 1e-12) {
                    return Err(Error::invalid("cost.lambda", format!("must be finite and nonzero, got {lambda}")));
                }
                Law::Exponential {
                    lambda: *lambda,
                    mass: -(-lambda).exp_m1(),
                }
            }
            CostSpec::Tabulated { c, density } => {
                if c.first() != Some(&0.0) || c.last() != Some(&1.0) {
                    return Err(Error::invalid("cost.c", "knots must run from 0 to 1"));
                }
                if density.iter().any(|d| !(*d >= 0.0)) {
                    return Err(Error::invalid("cost.density", "must be nonnegative"));
                }
                let table = MonotoneCubic::new(c.clone(), density.clone())
                    .map_err(|e| Error::invalid("cost.c", e.to_string()))?;
                let total = table.integral(0.0, 1.0);
                if !(total > 0.0) {
                    return Err(Error::invalid("cost.density", "integrates to zero"));
                }
                Law::Table(table.scaled(1.0 / total))
            }
        };
        Ok(Self { spec, law })
    }

    pub fn uniform() -> Self {
        Self {
            spec: CostSpec::Uniform,
            law: Law::Uniform,
        }
    }

    pub fn spec(&self) -> &CostSpec {
        &self.spec
    }

    /// `F(c)`.
    pub fn cdf(&self, c: f64) -> f64 {
        if c <= 0.0 {
            return 0.0;
        }
        if c >= 1.0 {
            return 1.0;
        }
        let v = match &self.law {
            Law::Uniform => c,
            Law::Normal {
                base,
                variance,
                lower,
                mass,
                ..
            } => {
                if c * c < 1e-4 * variance {
                    // Φ(c) - Φ(0) cancels badly for small c.
                    gauss_legendre(|x| base.pdf(x), 0.0, c) / mass
                } else {
                    (base.cdf(c) - lower) / mass
                }
            }
            Law::Exponential { lambda, mass } => -(-lambda * c).exp_m1() / mass,
            Law::Table(t) => t.integral_to(c),
        };
        v.clamp(0.0, 1.0)
    }

    /// `f(c)` on `[0, 1]`, zero outside.
    pub fn pdf(&self, c: f64) -> f64 {
        if !(0.0..=1.0).contains(&c) {
            return 0.0;
        }
        match &self.law {
            Law::Uniform => 1.0,
            Law::Normal { base, mass, .. } => base.pdf(c) / mass,
            Law::Exponential { lambda, mass } => lambda * (-lambda * c).exp() / mass,
            Law::Table(t) => t.eval(c).max(0.0),
        }
    }

    /// `f'(c)` on `[0, 1]`.
    pub fn pdf_derivative(&self, c: f64) -> f64 {
        if !(0.0..=1.0).contains(&c) {
            return 0.0;
        }
        match &self.law {
            Law::Uniform => 0.0,
            Law::Normal {
                mean, variance, ..
            } => -(c - mean) / variance * self.pdf(c),
            Law::Exponential { lambda, .. } => -lambda * self.pdf(c),
            Law::Table(t) => t.derivative(c),
        }
    }

    /// `∫_a^b c f(c) dc` over a subinterval of `[0, 1]`.
    pub fn partial_mean(&self, a: f64, b: f64) -> f64 {
        match &self.law {
            Law::Uniform => 0.5 * (b * b - a * a),
            _ => crate::numeric::adaptive_simpson(|c| c * self.pdf(c), a, b, 1e-14),
        }
    }
}

fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    const NODES: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
        (0.906_179_845_938_664, 0.236_926_885_056_189_08),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
    ];
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    half * NODES.iter().map(|(x, w)| w * f(mid + half * x)).sum::<f64>()
}
