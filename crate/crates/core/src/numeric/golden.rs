const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of `f` on `[a, b]`.
///
/// Returns the best point evaluated (including the endpoints), so a
/// discontinuous objective never yields a worse answer than its bracket ends.
pub fn golden_section_max<F>(f: F, a: f64, b: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut best = (lo, f(lo));
    let fb = f(hi);
    if fb > best.1 {
        best = (hi, fb);
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let keep = |x: f64, fx: f64, best: &mut (f64, f64)| {
        if fx > best.1 || (fx == best.1 && x < best.0) {
            *best = (x, fx);
        }
    };
    keep(x1, f1, &mut best);
    keep(x2, f2, &mut best);
    while hi - lo > xtol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            keep(x1, f1, &mut best);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            keep(x2, f2, &mut best);
        }
        if x1 >= x2 {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 0.37).powi(2) + 1.0, 0.0, 1.0, 1e-10);
        assert!((x - 0.37).abs() < 1e-8);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kinked_peak() {
        let (x, _) = golden_section_max(|x| -(x - 0.25).abs(), 0.0, 1.0, 1e-12);
        assert!((x - 0.25).abs() < 1e-11);
    }

    #[test]
    fn cliff_keeps_left_side() {
        let f = |x: f64| if x <= 0.5 { x } else { -1.0 };
        let (x, fx) = golden_section_max(f, 0.4, 0.6, 1e-12);
        assert!(x <= 0.5 && 0.5 - x < 1e-11);
        assert!(fx > 0.49);
    }
}
