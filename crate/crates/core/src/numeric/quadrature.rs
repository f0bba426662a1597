const MAX_DEPTH: u32 = 48;
const REL_TOL: f64 = 1e-13;
/// Panels left to split per call; once spent, current estimates are accepted.
const MAX_PANELS: usize = 1 << 18;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`, or to
/// relative accuracy near 1e-13 on panels where `tol` is below rounding.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut budget = MAX_PANELS;
    recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH, &mut budget)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    budget: &mut usize,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // Always split at least a few times so that a lucky first estimate on an
    // oscillating or kinked integrand is not accepted.
    let allowed = (15.0 * tol).max(REL_TOL * (left.abs() + right.abs()));
    if depth == 0 || *budget == 0 || (depth < MAX_DEPTH - 3 && delta.abs() <= allowed) {
        return left + right + delta / 15.0;
    }
    *budget -= 1;
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, budget)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, budget)
}

/// Integrates over `[a, b]` split at the interior `breaks`, so that kinks and
/// jumps of `f` never fall inside a Simpson panel.
pub fn integrate_pieces<F>(f: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|x| *x > a && *x < b).collect();
    pts.sort_by(|x, y| x.total_cmp(y));
    pts.dedup();
    let mut total = 0.0;
    let mut lo = a;
    let share = tol / (pts.len() + 1) as f64;
    for hi in pts.into_iter().chain(std::iter::once(b)) {
        total += adaptive_simpson(&f, lo, hi, share);
        lo = hi;
    }
    total
}
