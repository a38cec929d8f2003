use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::DefiningEquation;
use crate::error::{Error, Result};
use crate::roots::poly_roots;
use crate::tolerances::Tolerances;

/// The `k` values of `W` over a regular point, in canonical sheet order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fiber {
    pub z: Complex64,
    pub roots: Vec<Complex64>,
}

impl Fiber {
    /// Smallest pairwise distance between roots (infinite for one sheet).
    pub fn min_separation(&self) -> f64 {
        min_separation(&self.roots)
    }

    /// Tolerance for identifying a germ with one of the roots: a quarter of
    /// the separation, and never looser than `1e-6` relative for one sheet.
    pub fn germ_tolerance(&self) -> f64 {
        let sep = self.min_separation();
        if sep.is_finite() {
            0.25 * sep
        } else {
            1e-6 * (1.0 + self.roots.first().map_or(0.0, |r| r.norm()))
        }
    }

    /// Sheet index of the root matching `w`, if any lies within tolerance.
    pub fn match_root(&self, w: Complex64) -> Option<usize> {
        let tol = self.germ_tolerance();
        self.roots
            .iter()
            .enumerate()
            .map(|(i, r)| (i, (r - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .filter(|(_, d)| *d <= tol)
            .map(|(i, _)| i)
    }
}

pub(crate) fn min_separation(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    best
}

/// Lexicographic (real, imaginary) order; real parts within a rounding-level
/// band count as equal so that conjugate-like pairs order stably.
pub(crate) fn canonical_cmp(a: &Complex64, b: &Complex64, scale: f64) -> Ordering {
    let band = 1e-9 * scale;
    if (a.re - b.re).abs() <= band {
        a.im.total_cmp(&b.im)
    } else {
        a.re.total_cmp(&b.re)
    }
}

pub(crate) fn sort_canonical(roots: &mut [Complex64]) {
    let scale = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    roots.sort_by(|a, b| canonical_cmp(a, b, scale));
}

/// All `k` roots of `Ψ(·, z)`, Newton-polished and canonically ordered.
pub fn fiber_at(eq: &DefiningEquation, z: Complex64, tol: &Tolerances) -> Result<Fiber> {
    if let Some((cp, d)) = eq.critical_set().nearest(z) {
        if d <= tol.cluster * (1.0 + z.norm()) {
            return Err(Error::NearCriticalPoint {
                z,
                critical: cp.location,
                distance: d,
            });
        }
    }
    let coeffs = eq.w_coeffs_at(z);
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        let (cp, d) = eq.critical_set().nearest(z).expect("a pole is a critical point");
        return Err(Error::NearCriticalPoint {
            z,
            critical: cp.location,
            distance: d,
        });
    }
    let raw = poly_roots(&coeffs)?;
    let mut roots = Vec::with_capacity(raw.len());
    for r in raw {
        let polished = eq
            .newton(r, z, tol.root, 8)
            .ok_or(Error::RootFindingFailure { degree: eq.k() })?;
        roots.push(polished);
    }
    sort_canonical(&mut roots);
    let wmax = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let sep = min_separation(&roots);
    if sep <= tol.separation * (1.0 + wmax) {
        let (critical, distance) = eq
            .critical_set()
            .nearest(z)
            .map_or((z, 0.0), |(cp, d)| (cp.location, d));
        return Err(Error::NearCriticalPoint { z, critical, distance });
    }
    Ok(Fiber { z, roots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_roots_of_four() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        let f = fiber_at(&eq, c(4.0, 0.0), &Tolerances::default()).unwrap();
        assert!((f.roots[0] - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((f.roots[1] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn critical_point_rejected() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        assert!(matches!(
            fiber_at(&eq, c(0.0, 0.0), &Tolerances::default()),
            Err(Error::NearCriticalPoint { .. })
        ));
    }

    #[test]
    fn single_sheet() {
        let eq = DefiningEquation::parse(&["-1/z"]).unwrap();
        let f = fiber_at(&eq, c(2.0, 0.0), &Tolerances::default()).unwrap();
        assert_eq!(f.roots.len(), 1);
        assert!((f.roots[0] - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(f.match_root(c(0.5, 1e-9)), Some(0));
        assert_eq!(f.match_root(c(0.6, 0.0)), None);
    }

    #[test]
    fn canonical_order_is_stable_for_imaginary_pairs() {
        let eq = DefiningEquation::parse(&["0", "1"]).unwrap(); // W^2 + 1
        let f = fiber_at(&eq, c(0.3, 0.0), &Tolerances::default()).unwrap();
        assert!(f.roots[0].im < 0.0 && f.roots[1].im > 0.0);
    }

    #[test]
    fn residual_within_scaled_bound() {
        let tol = Tolerances::default();
        let eq = DefiningEquation::parse(&["z/3", "-(1+z^2)", "1/(z-2)"]).unwrap();
        let deg = eq.max_coeff_degree() as i32;
        for z in [c(0.5, 0.5), c(-3.0, 1.0), c(10.0, -7.0)] {
            let f = fiber_at(&eq, z, &tol).unwrap();
            for w in &f.roots {
                let e = eq.eval(*w, z);
                assert!(e.value.norm() < tol.root * e.scale);
                assert!(e.value.norm() < tol.root * (1.0 + z.norm()).powi(deg));
            }
        }
    }
}
