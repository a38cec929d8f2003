//! Stability of results under tolerance changes, on the equations the
//! acceptance suite uses.

mod common;

use algebroid::puiseux::{cycle_structure, default_epsilon, puiseux_expand, residue, residue_by_contour, DEFAULT_N_MAX};
use algebroid::tracker::{continue_branch, BasePath, Segment, SurfacePoint};
use algebroid::Tolerances;
use common::{c, eq};

const SUITE: [&[&str]; 6] = [
    &["0", "-z"],
    &["-1/z"],
    &["0", "-z^2"],
    &["0", "-(1 + z^2)"],
    &["-z^2"],
    &["0", "0", "-z*(z - 1)"],
];

#[test]
fn critical_points_survive_halving_the_cluster_tolerance() {
    let tol = Tolerances::default();
    for coeffs in SUITE {
        let crit = eq(coeffs).critical_set().clone();
        let finer = crit.reclustered(tol.cluster / 2.0);
        assert_eq!(finer.points.len(), crit.points.len(), "{coeffs:?}");
        for (a, b) in crit.points.iter().zip(&finer.points) {
            assert!((a.location - b.location).norm() < 1e-12);
        }
    }
}

#[test]
fn endpoints_survive_halving_the_step_and_root_tolerances() {
    let coarse = Tolerances::default();
    let fine = Tolerances {
        step_min: coarse.step_min / 2.0,
        root: coarse.root / 2.0,
        ..coarse
    };
    let path = BasePath::new(vec![
        Segment::line(c(1.0, 0.5), c(-2.0, 1.5)),
        Segment::line(c(-2.0, 1.5), c(-1.5, -2.0)),
        Segment::line(c(-1.5, -2.0), c(2.5, -0.5)),
    ])
    .unwrap();
    for coeffs in SUITE {
        let eq = eq(coeffs);
        let fiber = algebroid::surface::fiber_at(&eq, c(1.0, 0.5), &coarse).unwrap();
        for &w in &fiber.roots {
            let ends: Vec<_> = [coarse, fine]
                .iter()
                .map(|t| {
                    let start = SurfacePoint::new(&eq, c(1.0, 0.5), w, t).unwrap();
                    continue_branch(&eq, &start, &path, t).unwrap().endpoint.w
                })
                .collect();
            assert!((ends[0] - ends[1]).norm() < 1e-8, "{coeffs:?}: {} vs {}", ends[0], ends[1]);
        }
    }
}

#[test]
fn series_and_contour_residues_agree() {
    let tol = Tolerances::default();
    for coeffs in SUITE {
        let eq = eq(coeffs);
        for a in eq.critical_set().locations().collect::<Vec<_>>() {
            let eps = default_epsilon(&eq, a);
            for cycle in cycle_structure(&eq, a, eps, &tol).unwrap() {
                let series = residue(&puiseux_expand(&eq, a, &cycle, DEFAULT_N_MAX, eps, &tol).unwrap());
                let contour = residue_by_contour(&eq, a, &cycle, eps, &tol).unwrap();
                assert!((series - contour).norm() < 1e-8, "{coeffs:?} at {a}: {series} vs {contour}");
            }
        }
    }
}
