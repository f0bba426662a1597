use crate::error::{Error, Result};

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch–Carlson
/// slopes). Monotone data give a monotone, C¹ interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
    cumulative: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::invalid("knots", "need at least two (x, y) pairs of equal length"));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("knots", "abscissae must be strictly increasing"));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::invalid("knots", "non-finite value"));
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
        } else {
            for i in 1..n - 1 {
                let (a, b) = (delta[i - 1], delta[i]);
                if a == 0.0 || b == 0.0 || a.signum() != b.signum() {
                    d[i] = 0.0;
                } else {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / a + w2 / b);
                }
            }
            d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        let mut cumulative = vec![0.0; n];
        for i in 0..n - 1 {
            cumulative[i + 1] =
                cumulative[i] + h[i] * (0.5 * (y[i] + y[i + 1]) + h[i] * (d[i] - d[i + 1]) / 12.0);
        }
        Ok(Self { x, y, d, cumulative })
    }

    pub fn knots(&self) -> (&[f64], &[f64]) {
        (&self.x, &self.y)
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    fn locate(&self, x: f64) -> (usize, f64, f64) {
        let n = self.x.len();
        let x = x.clamp(self.x[0], self.x[n - 1]);
        let i = match self.x.partition_point(|&k| k <= x) {
            0 => 0,
            p => (p - 1).min(n - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        (i, h, (x - self.x[i]) / h)
    }

    /// Value at `x`; arguments outside the knot range are clamped.
    pub fn eval(&self, x: f64) -> f64 {
        let (i, h, t) = self.locate(x);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * self.y[i]
            + (t3 - 2.0 * t2 + t) * h * self.d[i]
            + (-2.0 * t3 + 3.0 * t2) * self.y[i + 1]
            + (t3 - t2) * h * self.d[i + 1]
    }

    pub fn derivative(&self, x: f64) -> f64 {
        if x < self.x[0] || x > self.x_max() {
            return 0.0;
        }
        let (i, h, t) = self.locate(x);
        let t2 = t * t;
        ((6.0 * t2 - 6.0 * t) * self.y[i]
            + (3.0 * t2 - 4.0 * t + 1.0) * h * self.d[i]
            + (-6.0 * t2 + 6.0 * t) * self.y[i + 1]
            + (3.0 * t2 - 2.0 * t) * h * self.d[i + 1])
            / h
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        if x < self.x[0] || x > self.x_max() {
            return 0.0;
        }
        let (i, h, t) = self.locate(x);
        ((12.0 * t - 6.0) * (self.y[i] - self.y[i + 1])
            + (6.0 * t - 4.0) * h * self.d[i]
            + (6.0 * t - 2.0) * h * self.d[i + 1])
            / (h * h)
    }

    /// Exact integral of the interpolant from the first knot to `x`.
    pub fn integral_to(&self, x: f64) -> f64 {
        let (i, h, t) = self.locate(x);
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        self.cumulative[i]
            + h * ((0.5 * t4 - t3 + t) * self.y[i]
                + (0.25 * t4 - 2.0 * t3 / 3.0 + 0.5 * t2) * h * self.d[i]
                + (-0.5 * t4 + t3) * self.y[i + 1]
                + (0.25 * t4 - t3 / 3.0) * h * self.d[i + 1])
    }

    pub fn integral(&self, a: f64, b: f64) -> f64 {
        self.integral_to(b) - self.integral_to(a)
    }

    /// Rescales ordinates, e.g. to normalise a density.
    pub fn scaled(mut self, factor: f64) -> Self {
        for v in self.y.iter_mut().chain(self.d.iter_mut()).chain(self.cumulative.iter_mut()) {
            *v *= factor;
        }
        self
    }
}

fn end_slope(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d.signum() != del0.signum() {
        0.0
    } else if del0.signum() != del1.signum() && d.abs() > 3.0 * del0.abs() {
        3.0 * del0
    } else {
        d
    }
}
