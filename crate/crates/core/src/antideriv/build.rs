use std::collections::VecDeque;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::family::constant_family;
use super::fit::fit_rational_scaled;
use super::symmetric::symmetric_coeffs;
use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, RatFunc};
use crate::puiseux::{singular_elements, DEFAULT_N_MAX};
use crate::quad::integrate_fiber;
use crate::surface::{
    fiber_at, irreducibility_check, monodromy_generators, DefiningEquation, Fiber, Generator, Irreducibility,
    SheetPermutation,
};
use crate::tolerances::Tolerances;
use crate::tracker::{check_margin, BasePath, Segment, SurfacePoint};

/// Branch integrals `c_{a,b_j}` from one base germ, routed breadth-first
/// over the monodromy generators at the base point.
#[derive(Debug, Clone)]
pub struct BranchRouter {
    base: SurfacePoint,
    base_fiber: Fiber,
    generators: Vec<Generator>,
    /// `periods[g][j]`: integral over generator `g` starting on sheet `j`.
    periods: Vec<Vec<Complex64>>,
    /// Value of the integral from the base germ to sheet `j` over the base point.
    sheet_values: Vec<Option<Complex64>>,
}

impl BranchRouter {
    pub fn new(eq: &DefiningEquation, base: &SurfacePoint, tol: &Tolerances) -> Result<BranchRouter> {
        let base_fiber = fiber_at(eq, base.z, tol)?;
        let base = SurfacePoint::on_fiber(&base_fiber, base.w)?;
        let generators = if eq.k() > 1 {
            monodromy_generators(eq, base.z, tol)?
        } else {
            Vec::new()
        };
        let periods = generators
            .iter()
            .map(|g| integrate_fiber(eq, &base_fiber.roots, &g.path, tol).map(|r| r.values))
            .collect::<Result<Vec<_>>>()?;
        let perms: Vec<&SheetPermutation> = generators.iter().map(|g| &g.permutation).collect();
        let sheet_values = bfs(eq.k(), base.sheet_hint.expect("on_fiber sets the sheet"), &perms, &periods);
        Ok(BranchRouter {
            base,
            base_fiber,
            generators,
            periods,
            sheet_values,
        })
    }

    pub fn base(&self) -> &SurfacePoint {
        &self.base
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    fn reached(&self) -> Result<Vec<Complex64>> {
        self.sheet_values
            .iter()
            .enumerate()
            .map(|(sheet, v)| v.ok_or(Error::UnreachableSheet { sheet }))
            .collect()
    }

    /// `F_j(z)` for every sheet of `fiber_at(eq, z)`, in canonical order.
    pub fn values_at(&self, eq: &DefiningEquation, z: Complex64, tol: &Tolerances) -> Result<Vec<Complex64>> {
        let at_base = self.reached()?;
        if (z - self.base.z).norm() <= 1e-14 * (1.0 + z.norm()) {
            return Ok(at_base);
        }
        let route = route(eq, self.base.z, z, tol)?;
        let integral = integrate_fiber(eq, &self.base_fiber.roots, &route, tol)?;
        let target = fiber_at(eq, z, tol)?;
        let mut out = vec![None; eq.k()];
        for (s, w) in integral.track.roots.iter().enumerate() {
            let j = target.match_root(*w).ok_or_else(|| Error::NotOnSurface {
                z,
                w: *w,
                reason: "routed branch does not match the target fiber".into(),
            })?;
            out[j] = Some(at_base[s] + integral.values[s]);
        }
        out.into_iter()
            .enumerate()
            .map(|(sheet, v)| v.ok_or(Error::UnreachableSheet { sheet }))
            .collect()
    }

    /// Largest change of the value vector (relative to `1 + max |F|`) when
    /// it is continued once around a generator, with that generator's centre.
    pub fn single_valuedness_defect(&self) -> Result<(f64, Option<Complex64>)> {
        let v = self.reached()?;
        let scale = 1.0 + v.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let mut worst = (0.0, None);
        for (g, p) in self.generators.iter().zip(&self.periods) {
            let d = (0..v.len())
                .map(|j| (v[j] + p[j] - v[g.permutation.image[j]]).norm())
                .fold(0.0, f64::max)
                / scale;
            if worst.1.is_none() || d > worst.0 {
                worst = (d, Some(g.critical));
            }
        }
        Ok(worst)
    }
}

/// Shortest generator words from the base sheet; ties go to the lower
/// generator index, forward before inverse.
fn bfs(k: usize, start: usize, perms: &[&SheetPermutation], periods: &[Vec<Complex64>]) -> Vec<Option<Complex64>> {
    let mut values = vec![None; k];
    values[start] = Some(Complex64::new(0.0, 0.0));
    let mut queue = VecDeque::from([start]);
    while let Some(j) = queue.pop_front() {
        let v = values[j].expect("queued sheets have values");
        for (g, perm) in perms.iter().enumerate() {
            let forward = (perm.image[j], v + periods[g][j]);
            let back_from = perm.inverse().image[j];
            let backward = (back_from, v - periods[g][back_from]);
            for (next, value) in [forward, backward] {
                if values[next].is_none() {
                    values[next] = Some(value);
                    queue.push_back(next);
                }
            }
        }
    }
    values
}

/// An admissible path `from → to`: the straight line, or a two-leg detour.
fn route(eq: &DefiningEquation, from: Complex64, to: Complex64, tol: &Tolerances) -> Result<BasePath> {
    let line = BasePath::line(from, to);
    let first_err = match check_margin(eq, &line, tol) {
        Ok(()) => return Ok(line),
        Err(e) => e,
    };
    let d = to - from;
    let normal = d * Complex64::i();
    for step in 1..=40 {
        for sign in [1.0, -1.0] {
            let via = from + 0.5 * d + normal * (sign * 0.05 * step as f64);
            let path = BasePath::new(vec![Segment::line(from, via), Segment::line(via, to)])?;
            if check_margin(eq, &path, tol).is_ok() {
                return Ok(path);
            }
        }
    }
    Err(first_err)
}

/// The `k` branch integrals at `z` from the base germ.
pub fn branch_integrals_at(
    eq: &DefiningEquation,
    base: &SurfacePoint,
    z: Complex64,
    tol: &Tolerances,
) -> Result<Vec<Complex64>> {
    BranchRouter::new(eq, base, tol)?.values_at(eq, z, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    /// Relative fit residual per coefficient `B_1..B_k`.
    pub residuals: Vec<f64>,
    pub grid: Vec<Complex64>,
    /// `[numerator, denominator]` degree chosen per coefficient.
    pub degrees: Vec<[usize; 2]>,
    pub degree_bound: [usize; 2],
    pub single_valuedness_defect: f64,
    pub verification_defect: f64,
    /// Monodromy transitivity of the fitted equation; `None` when the fitted
    /// equation has a vanishing discriminant.
    pub model_irreducible: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntiderivativeModel {
    pub k: usize,
    pub base: SurfacePoint,
    pub constant: Complex64,
    /// `B_1..B_k` of `M^k + B_1 M^(k-1) + ... + B_k = 0`.
    pub coeffs: Vec<RatFunc>,
    pub diagnostics: FitDiagnostics,
}

impl AntiderivativeModel {
    /// Coefficients of the antiderivative shifted by a further constant.
    pub fn family(&self, c_new: Complex64) -> Vec<RatFunc> {
        constant_family(&self.coeffs, &GaussianRational::from_c64_exact(c_new))
    }

    pub fn equation(&self) -> Result<DefiningEquation> {
        DefiningEquation::new(self.coeffs.clone())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BuildOptions {
    /// `(numerator, denominator)` degree bounds; default `k·d + 4` each.
    pub degree_bound: Option<(usize, usize)>,
    /// Sample points for the fit; default two circles around the critical set.
    pub grid: Option<Vec<Complex64>>,
    /// Points at which `M' = W` is checked; default a few points off the grid.
    pub probes: Option<Vec<Complex64>>,
}

/// Centroid and radius of the critical set (unit disk about 0 when empty).
fn critical_extent(eq: &DefiningEquation) -> (Complex64, f64) {
    let pts: Vec<Complex64> = eq.critical_set().locations().collect();
    if pts.is_empty() {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    let centroid = pts.iter().sum::<Complex64>() / pts.len() as f64;
    let radius = pts.iter().map(|p| (p - centroid).norm()).fold(0.0, f64::max);
    (centroid, radius)
}

pub fn default_grid(eq: &DefiningEquation, bound: usize) -> Vec<Complex64> {
    let (centre, r) = critical_extent(eq);
    let per_circle = 4 * bound.max(1);
    let mut grid = Vec::with_capacity(2 * per_circle);
    for (radius, phase) in [(1.5 * r + 1.0, 0.1), (2.0 * r + 2.0, 0.1 + std::f64::consts::PI / per_circle as f64)] {
        for j in 0..per_circle {
            let theta = phase + std::f64::consts::TAU * j as f64 / per_circle as f64;
            grid.push(centre + Complex64::from_polar(radius, theta));
        }
    }
    grid
}

fn default_probes(eq: &DefiningEquation, base: Complex64) -> Vec<Complex64> {
    let (centre, r) = critical_extent(eq);
    let mut probes = vec![base];
    for j in 0..4 {
        let theta = 0.3 + std::f64::consts::FRAC_PI_2 * j as f64;
        probes.push(centre + Complex64::from_polar(1.75 * r + 1.5, theta));
    }
    probes
}

/// Fit `M^k + Σ B_j M^(k-j) = 0` whose roots are the branch integrals of `W`
/// from `base`, shifted by `c`.
pub fn build_antiderivative(
    eq: &DefiningEquation,
    base: &SurfacePoint,
    c: Complex64,
    opts: &BuildOptions,
    tol: &Tolerances,
) -> Result<AntiderivativeModel> {
    if let Irreducibility::Intransitive(orbits) = irreducibility_check(eq, base.z, tol)? {
        return Err(Error::RefusedReducible { orbits });
    }
    for cp in eq.critical_set().locations() {
        for cycle in singular_elements(eq, cp, DEFAULT_N_MAX, None, tol)?.cycles {
            if cycle.residue.norm() > tol.residue {
                return Err(Error::RefusedNonzeroResidue {
                    center: cp,
                    residue: cycle.residue,
                });
            }
        }
    }
    let router = BranchRouter::new(eq, base, tol)?;
    let (sv_defect, sv_loop) = router.single_valuedness_defect()?;
    if sv_defect > tol.single_valued {
        return Err(Error::SingleValuednessViolation {
            loop_center: sv_loop.unwrap_or(base.z),
            defect: sv_defect,
        });
    }

    let k = eq.k();
    let d = k * eq.max_coeff_degree() + 4;
    let (dn, dd) = opts.degree_bound.unwrap_or((d, d));
    let grid = opts.grid.clone().unwrap_or_else(|| default_grid(eq, dn.max(dd)));
    let mut samples: Vec<Vec<(Complex64, Complex64)>> = vec![Vec::with_capacity(grid.len()); k];
    let mut fmax = 0.0f64;
    for &z in &grid {
        let f: Vec<Complex64> = router.values_at(eq, z, tol)?.into_iter().map(|v| v + c).collect();
        fmax = fmax.max(f.iter().map(|x| x.norm()).fold(0.0, f64::max));
        for (j, b) in symmetric_coeffs(&f).into_iter().enumerate() {
            samples[j].push((z, b));
        }
    }
    let mut coeffs = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for (j, s) in samples.iter().enumerate() {
        // e_j of values of size |F| is naturally of size |F|^j
        let fit = fit_rational_scaled(s, (dn, dd), tol.fit, fmax.powi(j as i32 + 1))?;
        coeffs.push(fit.function);
        residuals.push(fit.residual);
        degrees.push(fit.degrees);
    }

    let mut model = AntiderivativeModel {
        k,
        base: *router.base(),
        constant: c,
        coeffs,
        diagnostics: FitDiagnostics {
            residuals,
            grid: grid.clone(),
            degrees,
            degree_bound: [dn, dd],
            single_valuedness_defect: sv_defect,
            verification_defect: f64::NAN,
            model_irreducible: None,
        },
    };
    let probes = opts.probes.clone().unwrap_or_else(|| default_probes(eq, base.z));
    model.diagnostics.verification_defect = verify_antiderivative(&model, eq, &probes, tol)?;
    if let Ok(model_eq) = model.equation() {
        let regular = grid.iter().copied().find(|&z| fiber_at(&model_eq, z, tol).is_ok());
        if let Some(z) = regular {
            model.diagnostics.model_irreducible = Some(irreducibility_check(&model_eq, z, tol)?.is_transitive());
        }
    }
    Ok(model)
}

/// Max over probes of the mismatch between the implicit derivatives of the
/// fitted roots and the fiber of `W` (relative to `1 + |w|`). Probes where
/// either fiber is degenerate are skipped.
pub fn verify_antiderivative(
    model: &AntiderivativeModel,
    eq: &DefiningEquation,
    probes: &[Complex64],
    tol: &Tolerances,
) -> Result<f64> {
    let model_eq = model.equation()?;
    let mut worst = 0.0f64;
    for &z in probes {
        let (Ok(mf), Ok(wf)) = (fiber_at(&model_eq, z, tol), fiber_at(eq, z, tol)) else {
            continue;
        };
        let mut unused: Vec<Complex64> = wf.roots.clone();
        for m in &mf.roots {
            let d = model_eq.dwdz(*m, z);
            let (idx, _) = unused
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (w - d).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("fibers have equal size");
            let w = unused.swap_remove(idx);
            worst = worst.max((w - d).norm() / (1.0 + w.norm()));
        }
    }
    Ok(worst)
}
