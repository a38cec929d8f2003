use num_complex::Complex64;

/// `B_j = (-1)^j e_j(values)`, so that `∏ (M - F_j) = M^k + Σ B_j M^(k-j)`.
///
/// Inputs are sorted first so the output is bitwise independent of their order.
pub fn symmetric_coeffs(values: &[Complex64]) -> Vec<Complex64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    // descending coefficients of the running product, leading 1 first
    let mut prod = vec![Complex64::new(1.0, 0.0)];
    for f in sorted {
        let mut next = prod.clone();
        next.push(Complex64::new(0.0, 0.0));
        for j in 1..next.len() {
            next[j] -= f * prod[j - 1];
        }
        prod = next;
    }
    prod.split_off(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    use crate::roots::poly_roots;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let f = c(0.3, -1.2);
        let b = symmetric_coeffs(&[f, -f]);
        assert_eq!(b[0], c(0.0, 0.0));
        assert!((b[1] + f * f).norm() < 1e-15);
        assert_eq!(symmetric_coeffs(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]), vec![c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0)]);
        assert_eq!(symmetric_coeffs(&[f]), vec![-f]);
    }

    fn complex() -> impl Strategy<Value = Complex64> {
        (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| c(a, b))
    }

    proptest! {
        #[test]
        fn permutation_invariant(values in prop::collection::vec(complex(), 1..6), seed in any::<u64>()) {
            let mut shuffled = values.clone();
            let n = shuffled.len();
            for i in 0..n {
                shuffled.swap(i, (seed.rotate_left(i as u32 * 7) as usize) % n);
            }
            prop_assert_eq!(symmetric_coeffs(&values), symmetric_coeffs(&shuffled));
        }

        #[test]
        fn roots_recover_inputs(values in prop::collection::vec(complex(), 1..5)) {
            // keep inputs separated so root recovery is well conditioned
            for i in 0..values.len() {
                for j in 0..i {
                    prop_assume!((values[i] - values[j]).norm() > 0.1);
                }
            }
            let b = symmetric_coeffs(&values);
            let mut ascending: Vec<Complex64> = b.iter().rev().copied().collect();
            ascending.push(c(1.0, 0.0));
            let roots = poly_roots(&ascending).unwrap();
            for v in &values {
                let best = roots.iter().map(|r| (r - v).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-10, "{} not recovered: {:?}", v, roots);
            }
        }
    }
}
