//! Local expansions `Σ B_n (z - a)^(n/m)` at critical points, extracted
//! numerically: the cycle is found by monodromy, then the lifted branch is
//! sampled over `m` turns and Fourier-analysed in `t = (z - a)^(1/m)`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::closed_loop_integral;
use crate::surface::{fiber_at, monodromy, DefiningEquation};
use crate::tolerances::Tolerances;
use crate::tracker::{loop_path, track_fiber, BasePath, Segment, SurfacePoint};

pub const DEFAULT_N_MAX: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuiseuxExpansion {
    pub center: Complex64,
    pub m: usize,
    /// Leading index; `None` when the branch vanishes identically.
    pub u: Option<i64>,
    /// `B_n` for the indices that survived the threshold.
    pub coeffs: BTreeMap<i64, Complex64>,
    pub n_max: usize,
    pub epsilon: f64,
    /// Sheet (over `center + epsilon`) that fixes the branch of `t`.
    pub start_sheet: usize,
}

impl PuiseuxExpansion {
    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    /// Truncated sum at `z`, on the branch of `t` continued from `arg t = 0`
    /// at `theta` (the angle of `z - center` measured along the lift).
    pub fn eval_on_lift(&self, radius: f64, theta: f64) -> Complex64 {
        let t = Complex64::from_polar(radius.powf(1.0 / self.m as f64), theta / self.m as f64);
        self.coeffs.iter().map(|(&n, b)| b * t.powi(n as i32)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    PoleElement,
    AlgebraicElement,
    Both,
    Regular,
}

impl Classification {
    fn of(m: usize, u: Option<i64>) -> Self {
        let pole = u.is_some_and(|u| u < 0);
        match (pole, m > 1) {
            (true, true) => Classification::Both,
            (true, false) => Classification::PoleElement,
            (false, true) => Classification::AlgebraicElement,
            (false, false) => Classification::Regular,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub sheets: Vec<usize>,
    pub expansion: PuiseuxExpansion,
    pub residue: Complex64,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularElementReport {
    pub center: Complex64,
    pub epsilon: f64,
    pub cycles: Vec<CycleReport>,
}

/// Default sampling radius: a quarter of the distance to the nearest other
/// critical point, at most 1/2.
pub fn default_epsilon(eq: &DefiningEquation, a: Complex64) -> f64 {
    let crit = eq.critical_set();
    let iso = match crit.find(a) {
        Some(i) => crit.isolation(i),
        None => crit
            .locations()
            .map(|c| (c - a).norm())
            .filter(|d| *d > 0.0)
            .fold(f64::INFINITY, f64::min),
    };
    (0.25 * iso).min(0.5)
}

fn check_epsilon(eq: &DefiningEquation, a: Complex64, eps: f64) -> Result<()> {
    let others = eq
        .critical_set()
        .locations()
        .filter(|c| (c - a).norm() > 1e-12 * (1.0 + a.norm()))
        .map(|c| (c - a).norm())
        .fold(f64::INFINITY, f64::min);
    if eps.is_nan() || eps <= 0.0 || eps >= 0.5 * others {
        return Err(Error::AnnulusTooWide {
            center: a,
            radius: eps,
            reason: format!("radius must be positive and below half the distance {others:e} to the next critical point"),
        });
    }
    Ok(())
}

/// Cycles of the monodromy of a small circle about `a`, as sheet indices of
/// the fiber over `a + ε`; each cycle is listed in the order the loop visits
/// its sheets, starting from the smallest index.
pub fn cycle_structure(eq: &DefiningEquation, a: Complex64, eps: f64, tol: &Tolerances) -> Result<Vec<Vec<usize>>> {
    check_epsilon(eq, a, eps)?;
    let perm = monodromy(eq, &loop_path(a, eps, 1, a + eps), tol)?;
    Ok(perm.cycles())
}

/// The sheet that fixes the branch of `t`: the one with the largest real
/// part at `θ = 0` (the last of the cycle in canonical order).
pub fn default_start_sheet(cycle: &[usize]) -> usize {
    *cycle.iter().max().expect("non-empty cycle")
}

/// Branch values on `M` equispaced points over `m` turns of the circle.
fn sample_lift(
    eq: &DefiningEquation,
    a: Complex64,
    radius: f64,
    m: usize,
    sheet: usize,
    count: usize,
    tol: &Tolerances,
) -> Result<Vec<Complex64>> {
    let fiber = fiber_at(eq, a + radius, tol)?;
    let dtheta = TAU * m as f64 / count as f64;
    let segments = (0..count)
        .map(|j| Segment::arc(a, radius, j as f64 * dtheta, (j + 1) as f64 * dtheta))
        .collect();
    let path = BasePath::new(segments)?;
    let mut values = Vec::with_capacity(count);
    values.push(fiber.roots[sheet]);
    track_fiber(eq, &fiber.roots, &path, tol, |rec| {
        if rec.s1 == 1.0 && values.len() < count {
            values.push(rec.roots1[sheet]);
        }
        Ok(())
    })?;
    Ok(values)
}

/// `c_n = (1/M) Σ_j w_j e^{-2πi n j / M}` for `|n| ≤ n_max`.
fn fourier(values: &[Complex64], n_max: usize) -> BTreeMap<i64, Complex64> {
    let count = values.len() as f64;
    let n_max = n_max as i64;
    (-n_max..=n_max)
        .map(|n| {
            let c: Complex64 = values
                .iter()
                .enumerate()
                .map(|(j, w)| w * Complex64::from_polar(1.0, -TAU * (n as f64) * j as f64 / count))
                .sum();
            (n, c / count)
        })
        .collect()
}

fn sample_count(n_max: usize) -> usize {
    (8 * n_max.max(1)).next_power_of_two()
}

/// Scaled coefficients `c_n = B_n ε^(n/m)` at one radius.
fn scaled_coefficients(
    eq: &DefiningEquation,
    a: Complex64,
    eps: f64,
    m: usize,
    sheet: usize,
    n_max: usize,
    tol: &Tolerances,
) -> Result<BTreeMap<i64, Complex64>> {
    let values = sample_lift(eq, a, eps, m, sheet, sample_count(n_max), tol)?;
    Ok(fourier(&values, n_max))
}

/// Expansion of the branch through `start_sheet` of the cycle `cycle` at `a`.
pub fn puiseux_expand_from(
    eq: &DefiningEquation,
    a: Complex64,
    cycle: &[usize],
    start_sheet: usize,
    n_max: usize,
    eps: f64,
    tol: &Tolerances,
) -> Result<PuiseuxExpansion> {
    check_epsilon(eq, a, eps)?;
    let m = cycle.len();
    let big = scaled_coefficients(eq, a, eps, m, start_sheet, n_max, tol)?;
    let half_start = {
        // the sheet over a + ε/2 reached radially from the start sheet
        let fiber = fiber_at(eq, a + eps, tol)?;
        let track = track_fiber(eq, &fiber.roots, &BasePath::line(a + eps, a + 0.5 * eps), tol, |_| Ok(()))?;
        fiber_at(eq, a + 0.5 * eps, tol)?
            .match_root(track.roots[start_sheet])
            .ok_or_else(|| Error::AnnulusTooWide {
                center: a,
                radius: eps,
                reason: "could not follow the start sheet to the inner radius".into(),
            })?
    };
    let small = scaled_coefficients(eq, a, 0.5 * eps, m, half_start, n_max, tol)?;

    let scale_big = big.values().map(|c| c.norm()).fold(0.0, f64::max);
    let scale_small = small.values().map(|c| c.norm()).fold(0.0, f64::max);
    let mut coeffs = BTreeMap::new();
    let mut worst = 0.0f64;
    for (&n, c) in &big {
        let predicted = c * 0.5f64.powf(n as f64 / m as f64);
        if n.unsigned_abs() as usize <= n_max / 2 && scale_small > 0.0 {
            worst = worst.max((predicted - small[&n]).norm() / scale_small);
        }
        if c.norm() > tol.coeff * scale_big {
            coeffs.insert(n, c / eps.powf(n as f64 / m as f64));
        }
    }
    if worst > tol.consistency {
        return Err(Error::AnnulusTooWide {
            center: a,
            radius: eps,
            reason: format!("coefficients at radii ε and ε/2 differ by {worst:e}"),
        });
    }
    let u = coeffs.keys().next().copied();
    Ok(PuiseuxExpansion {
        center: a,
        m,
        u,
        coeffs,
        n_max,
        epsilon: eps,
        start_sheet,
    })
}

pub fn puiseux_expand(
    eq: &DefiningEquation,
    a: Complex64,
    cycle: &[usize],
    n_max: usize,
    eps: f64,
    tol: &Tolerances,
) -> Result<PuiseuxExpansion> {
    puiseux_expand_from(eq, a, cycle, default_start_sheet(cycle), n_max, eps, tol)
}

/// `m · B_{-m}`.
pub fn residue(exp: &PuiseuxExpansion) -> Complex64 {
    exp.coeff(-(exp.m as i64)) * exp.m as f64
}

/// `(1/2πi) ∮` over the `m`-turn loop of radius `ε`, started on the cycle.
pub fn residue_by_contour(
    eq: &DefiningEquation,
    a: Complex64,
    cycle: &[usize],
    eps: f64,
    tol: &Tolerances,
) -> Result<Complex64> {
    check_epsilon(eq, a, eps)?;
    let start = SurfacePoint::on_sheet(eq, a + eps, default_start_sheet(cycle), tol)?;
    let r = closed_loop_integral(eq, &start, &loop_path(a, eps, cycle.len() as i32, a + eps), tol)?;
    Ok(r.value / Complex64::new(0.0, TAU))
}

/// Every cycle at `a` with its expansion, residue and classification.
pub fn singular_elements(
    eq: &DefiningEquation,
    a: Complex64,
    n_max: usize,
    eps: Option<f64>,
    tol: &Tolerances,
) -> Result<SingularElementReport> {
    let eps = eps.unwrap_or_else(|| default_epsilon(eq, a));
    let cycles = cycle_structure(eq, a, eps, tol)?
        .into_iter()
        .map(|sheets| {
            let expansion = puiseux_expand(eq, a, &sheets, n_max, eps, tol)?;
            Ok(CycleReport {
                residue: residue(&expansion),
                classification: Classification::of(expansion.m, expansion.u),
                sheets,
                expansion,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SingularElementReport {
        center: a,
        epsilon: eps,
        cycles,
    })
}

/// Smallest `n ≥ 0` with `(z - z0)^n w(z)` bounded near `z0` on every sheet.
pub fn growth_bound(eq: &DefiningEquation, z0: Complex64, tol: &Tolerances) -> Result<u32> {
    let Some(idx) = eq.critical_set().find(z0) else {
        return Ok(0);
    };
    let a = eq.critical_set().points[idx].location;
    let report = singular_elements(eq, a, DEFAULT_N_MAX, None, tol)?;
    Ok(report
        .cycles
        .iter()
        .filter_map(|c| c.expansion.u.map(|u| (u, c.expansion.m as i64)))
        .map(|(u, m)| (-u).div_euclid(m) + i64::from((-u).rem_euclid(m) != 0))
        .map(|n| n.max(0) as u32)
        .max()
        .unwrap_or(0))
}

/// `θ` grid used by the reconstruction check: `count` angles over `m` turns.
pub fn lift_angles(m: usize, count: usize) -> Vec<f64> {
    (0..count).map(|j| 2.0 * PI * m as f64 * j as f64 / count as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn eq(coeffs: &[&str]) -> DefiningEquation {
        DefiningEquation::parse(coeffs).unwrap()
    }

    fn only(exp: &PuiseuxExpansion, n: i64, value: Complex64, tol: f64) {
        for k in -(exp.n_max as i64)..=exp.n_max as i64 {
            let expected = if k == n { value } else { c(0.0, 0.0) };
            assert!((exp.coeff(k) - expected).norm() < tol, "B_{k} = {}", exp.coeff(k));
        }
    }

    #[test]
    fn square_root() {
        let e = eq(&["0", "-z"]);
        let tol = Tolerances::default();
        let r = singular_elements(&e, c(0.0, 0.0), DEFAULT_N_MAX, None, &tol).unwrap();
        assert_eq!(r.cycles.len(), 1);
        let cy = &r.cycles[0];
        assert_eq!((cy.expansion.m, cy.expansion.u), (2, Some(1)));
        only(&cy.expansion, 1, c(1.0, 0.0), 1e-10);
        assert!(cy.residue.norm() < 1e-12);
        assert_eq!(cy.classification, Classification::AlgebraicElement);
        let other = puiseux_expand_from(&e, c(0.0, 0.0), &cy.sheets, 0, 8, r.epsilon, &tol).unwrap();
        // the other sheet gives the ζ-rotated coefficient
        assert!((other.coeff(1) + 1.0).norm() < 1e-10);
    }

    #[test]
    fn simple_pole() {
        let e = eq(&["-1/z"]);
        let tol = Tolerances::default();
        let r = singular_elements(&e, c(0.0, 0.0), DEFAULT_N_MAX, None, &tol).unwrap();
        let cy = &r.cycles[0];
        assert_eq!((cy.expansion.m, cy.expansion.u), (1, Some(-1)));
        only(&cy.expansion, -1, c(1.0, 0.0), 1e-10);
        assert!((cy.residue - 1.0).norm() < 1e-12);
        assert_eq!(cy.classification, Classification::PoleElement);
        let rc = residue_by_contour(&e, c(0.0, 0.0), &cy.sheets, r.epsilon, &tol).unwrap();
        assert!((rc - 1.0).norm() < 1e-10);
        assert_eq!(growth_bound(&e, c(0.0, 0.0), &tol).unwrap(), 1);
    }

    #[test]
    fn branch_point_of_sqrt_one_plus_z_squared() {
        let e = eq(&["0", "-(1+z^2)"]);
        let tol = Tolerances::default();
        let i = c(0.0, 1.0);
        let r = singular_elements(&e, i, DEFAULT_N_MAX, None, &tol).unwrap();
        assert_eq!(r.cycles.len(), 1);
        let exp = &r.cycles[0].expansion;
        assert_eq!((exp.m, exp.u), (2, Some(1)));
        assert!((exp.coeff(1) - c(0.0, 2.0).sqrt()).norm() < 1e-8);
        // w = √(z-i)·√(z+i): odd powers of t only
        assert!(exp.coeffs.keys().all(|n| n % 2 == 1));
        assert!(r.cycles[0].residue.norm() < 1e-8);
        let rc = residue_by_contour(&e, i, &r.cycles[0].sheets, r.epsilon, &tol).unwrap();
        assert!(rc.norm() < 1e-8);
    }

    #[test]
    fn reducible_point_has_two_cycles() {
        let e = eq(&["0", "-z^2"]);
        let tol = Tolerances::default();
        let r = singular_elements(&e, c(0.0, 0.0), 16, None, &tol).unwrap();
        assert_eq!(r.cycles.iter().map(|c| c.sheets.len()).collect::<Vec<_>>(), vec![1, 1]);
        for cy in &r.cycles {
            assert_eq!(cy.expansion.u, Some(1));
            assert_eq!(cy.classification, Classification::Regular);
        }
    }

    #[test]
    fn growth_bounds() {
        let tol = Tolerances::default();
        assert_eq!(growth_bound(&eq(&["0", "-z"]), c(0.0, 0.0), &tol).unwrap(), 0);
        assert_eq!(growth_bound(&eq(&["0", "-z"]), c(5.0, 0.0), &tol).unwrap(), 0);
        // W^2 = 1/z^3: u = -3, m = 2 → ⌈3/2⌉ = 2
        assert_eq!(growth_bound(&eq(&["0", "-1/z^3"]), c(0.0, 0.0), &tol).unwrap(), 2);
    }

    #[test]
    fn synthetic_residue() {
        let exp = PuiseuxExpansion {
            center: c(0.0, 0.0),
            m: 2,
            u: Some(-2),
            coeffs: [(-2, c(3.0, 0.0))].into_iter().collect(),
            n_max: 4,
            epsilon: 0.5,
            start_sheet: 0,
        };
        assert_eq!(residue(&exp), c(6.0, 0.0));
    }

    #[test]
    fn reconstruction_on_inner_circle() {
        let e = eq(&["0", "-(1+z^2)"]);
        let tol = Tolerances::default();
        let i = c(0.0, 1.0);
        let r = singular_elements(&e, i, DEFAULT_N_MAX, None, &tol).unwrap();
        let exp = &r.cycles[0].expansion;
        let inner = 0.5 * exp.epsilon;
        let fiber = fiber_at(&e, i + exp.epsilon, &tol).unwrap();
        let track = track_fiber(&e, &fiber.roots, &BasePath::line(i + exp.epsilon, i + inner), &tol, |_| Ok(())).unwrap();
        let sheet = fiber_at(&e, i + inner, &tol).unwrap().match_root(track.roots[exp.start_sheet]).unwrap();
        let values = sample_lift(&e, i, inner, exp.m, sheet, 16, &tol).unwrap();
        for (w, theta) in values.iter().zip(lift_angles(exp.m, 16)) {
            let approx = exp.eval_on_lift(inner, theta);
            assert!((approx - w).norm() < 1e-6 * w.norm());
        }
    }
}
