//! Expected weighted surplus of an allocation rule.

use crate::market::MarketEnvironment;
use crate::numeric::integrate_pieces;

/// `E[CS + αΠ]` for the allocation `q(c)` on `[0, c̄]` (zero above), where `Π(c̄) = pi_top`
/// and `Π(c) = pi_top + ∫_c^c̄ q`.
///
/// Integration by parts gives `∫₀^c̄ [V(q) - cq - k·1{q>0}] f - (1-α)[∫₀^c̄ q F + pi_top F(c̄)]`.
pub fn expected_welfare<Q>(
    env: &MarketEnvironment,
    q: Q,
    c_bar: f64,
    breaks: &[f64],
    pi_top: f64,
    tol: f64,
) -> f64
where
    Q: Fn(f64) -> f64,
{
    if c_bar <= 0.0 {
        return 0.0;
    }
    let d = &env.demand;
    let cost = &env.cost;
    let share = 1.0 - env.alpha;
    let integrand = |c: f64| {
        let qc = q(c);
        if qc <= 0.0 {
            return 0.0;
        }
        (d.value(qc) - c * qc - env.k) * cost.pdf(c) - share * qc * cost.cdf(c)
    };
    integrate_pieces(integrand, 0.0, c_bar, breaks, tol) - share * pi_top * cost.cdf(c_bar)
}
