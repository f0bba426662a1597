/// Euclidean projection of `y` onto nonincreasing sequences (pool adjacent
/// violators). Weights must be positive.
pub fn nonincreasing_projection(y: &[f64], w: &[f64]) -> Vec<f64> {
    debug_assert_eq!(y.len(), w.len());
    // Blocks of (weighted mean, total weight, length).
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(y.len());
    for (&v, &wt) in y.iter().zip(w) {
        let mut cur = (v, wt, 1usize);
        while let Some(&(m, bw, len)) = blocks.last() {
            if m >= cur.0 {
                break;
            }
            blocks.pop();
            let tw = bw + cur.1;
            cur = ((m * bw + cur.0 * cur.1) / tw, tw, len + cur.2);
        }
        blocks.push(cur);
    }
    let mut out = Vec::with_capacity(y.len());
    for (m, _, len) in blocks {
        out.extend(std::iter::repeat(m).take(len));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pools_violators() {
        let out = nonincreasing_projection(&[1.0, 3.0, 2.0, 0.0], &[1.0; 4]);
        assert_eq!(out, vec![2.0, 2.0, 2.0, 0.0]);
    }

    proptest! {
        #[test]
        fn output_is_nonincreasing_and_mean_preserving(y in prop::collection::vec(-5.0f64..5.0, 1..60)) {
            let w = vec![1.0; y.len()];
            let out = nonincreasing_projection(&y, &w);
            for pair in out.windows(2) {
                prop_assert!(pair[1] <= pair[0] + 1e-12);
            }
            let s0: f64 = y.iter().sum();
            let s1: f64 = out.iter().sum();
            prop_assert!((s0 - s1).abs() < 1e-9);
        }

        #[test]
        fn projection_is_idempotent(y in prop::collection::vec(-5.0f64..5.0, 1..40)) {
            let w = vec![1.0; y.len()];
            let once = nonincreasing_projection(&y, &w);
            let twice = nonincreasing_projection(&once, &w);
            for (a, b) in once.iter().zip(&twice) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
