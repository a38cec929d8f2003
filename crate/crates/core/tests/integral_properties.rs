//! Linearity, additivity, reversal and null loops of surface integrals on
//! random admissible paths.

mod common;

use algebroid::exactalg::GaussianRational;
use algebroid::quad::{closed_loop_integral, surface_integral};
use algebroid::tracker::{reverse, BasePath, SurfacePoint};
use algebroid::Tolerances;
use common::{c, eq, halves, random_path};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn path_from(seed: u64) -> BasePath {
    random_path(&mut ChaCha8Rng::seed_from_u64(seed), c(1.0, 0.0), 0.25)
}

const CASES: [(&[&str], [f64; 2]); 3] = [(&["0", "-z"], [1.0, 0.0]), (&["-1/z"], [1.0, 0.0]), (&["0", "0", "-z"], [1.0, 0.0])];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn additive_under_subdivision(seed in any::<u64>(), which in 0usize..3) {
        let (coeffs, w) = CASES[which];
        let (eq, tol) = (eq(coeffs), Tolerances::default());
        let base = SurfacePoint::new(&eq, c(1.0, 0.0), c(w[0], w[1]), &tol).unwrap();
        let path = path_from(seed);
        let whole = surface_integral(&eq, &base, &path, &tol).unwrap();
        let (p1, p2) = halves(&path);
        let first = surface_integral(&eq, &base, &p1, &tol).unwrap();
        let second = surface_integral(&eq, &first.endpoint, &p2, &tol).unwrap();
        prop_assert!((first.value + second.value - whole.value).norm() < 1e-9);
        prop_assert!((second.endpoint.w - whole.endpoint.w).norm() < 1e-9);
    }

    #[test]
    fn reversal_negates_and_null_loops_vanish(seed in any::<u64>(), which in 0usize..3) {
        let (coeffs, w) = CASES[which];
        let (eq, tol) = (eq(coeffs), Tolerances::default());
        let base = SurfacePoint::new(&eq, c(1.0, 0.0), c(w[0], w[1]), &tol).unwrap();
        let path = path_from(seed);
        let there = surface_integral(&eq, &base, &path, &tol).unwrap();
        let back = surface_integral(&eq, &there.endpoint, &reverse(&path), &tol).unwrap();
        prop_assert!((there.value + back.value).norm() < 1e-9);
        let null = closed_loop_integral(&eq, &base, &path.then(&reverse(&path)).unwrap(), &tol).unwrap();
        prop_assert!(null.value.norm() < 1e-9);
        prop_assert!(null.closed_on_surface);
    }

    #[test]
    fn linear_in_the_integrand(seed in any::<u64>(), re in -3i64..=3, im in -3i64..=3, den in 1i64..=3) {
        prop_assume!(re != 0 || im != 0);
        let alpha = GaussianRational::from_parts((re, den), (im, den));
        let (eq, tol) = (eq(&["0", "-z"]), Tolerances::default());
        let scaled = eq.scaled(&alpha).unwrap();
        let a = alpha.to_c64();
        let path = path_from(seed);
        let base = SurfacePoint::new(&eq, c(1.0, 0.0), c(1.0, 0.0), &tol).unwrap();
        let base_a = SurfacePoint::new(&scaled, c(1.0, 0.0), a, &tol).unwrap();
        let v = surface_integral(&eq, &base, &path, &tol).unwrap().value;
        let va = surface_integral(&scaled, &base_a, &path, &tol).unwrap().value;
        prop_assert!((va - a * v).norm() < 1e-9);
    }
}

#[test]
fn matches_closed_form_on_sqrt() {
    // ∫ sqrt(z) dz = (2/3) z^(3/2) with the branch followed continuously
    let (eq, tol) = (eq(&["0", "-z"]), Tolerances::default());
    let base = SurfacePoint::new(&eq, c(1.0, 0.0), c(1.0, 0.0), &tol).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let path = random_path(&mut rng, c(1.0, 0.0), 0.25);
        let r = surface_integral(&eq, &base, &path, &tol).unwrap();
        let (z, w) = (r.endpoint.z, r.endpoint.w);
        let expected = 2.0 / 3.0 * (z * w - 1.0);
        assert!((r.value - expected).norm() < 1e-9, "{} vs {}", r.value, expected);
    }
}
