use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::integral::{closed_loop_integral, surface_integral};
use crate::error::{Error, Result};
use crate::puiseux::{default_epsilon, default_start_sheet, singular_elements, DEFAULT_N_MAX};
use crate::surface::{fiber_at, DefiningEquation};
use crate::tolerances::Tolerances;
use crate::tracker::{loop_path, BasePath, SurfacePoint};

/// `c_{a,b}`: the integral from a fixed base germ to a target germ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralElement {
    pub base: SurfacePoint,
    pub target: SurfacePoint,
    pub c_ab: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueCheck {
    pub center: Complex64,
    pub sheets: Vec<usize>,
    pub loop_value: Complex64,
    /// `2πi` times the Puiseux residue.
    pub expected: Complex64,
    pub discrepancy: f64,
}

/// The `m`-turn loop value against `2πi · m B_{-m}` for every cycle at `a`.
pub fn residue_theorem_check(
    eq: &DefiningEquation,
    a: Complex64,
    eps: Option<f64>,
    tol: &Tolerances,
) -> Result<Vec<ResidueCheck>> {
    let eps = eps.unwrap_or_else(|| default_epsilon(eq, a));
    let report = singular_elements(eq, a, DEFAULT_N_MAX, Some(eps), tol)?;
    report
        .cycles
        .iter()
        .map(|cy| {
            let start = SurfacePoint::on_sheet(eq, a + eps, default_start_sheet(&cy.sheets), tol)?;
            let loop_ = loop_path(a, eps, cy.sheets.len() as i32, a + eps);
            let loop_value = closed_loop_integral(eq, &start, &loop_, tol)?.value;
            let expected = Complex64::new(0.0, TAU) * cy.residue;
            Ok(ResidueCheck {
                center: a,
                sheets: cy.sheets.clone(),
                loop_value,
                expected,
                discrepancy: (loop_value - expected).norm(),
            })
        })
        .collect()
}

fn same_germ(eq: &DefiningEquation, a: &SurfacePoint, w: Complex64, tol: &Tolerances) -> Result<bool> {
    let fiber = fiber_at(eq, a.z, tol)?;
    Ok(fiber.match_root(a.w).is_some() && fiber.match_root(a.w) == fiber.match_root(w))
}

/// `c_{a,b}` along `path`, which must lift from `base` to `target`.
pub fn c_ab(
    eq: &DefiningEquation,
    base: &SurfacePoint,
    target: &SurfacePoint,
    path: &BasePath,
    tol: &Tolerances,
) -> Result<IntegralElement> {
    let r = surface_integral(eq, base, path, tol)?;
    let end_ok = (r.endpoint.z - target.z).norm() <= 1e-9 * (1.0 + target.z.norm());
    if !end_ok || !same_germ(eq, target, r.endpoint.w, tol)? {
        return Err(Error::EndpointGermMismatch {
            reached: r.endpoint.w,
            expected: target.w,
        });
    }
    Ok(IntegralElement {
        base: SurfacePoint::new(eq, base.z, base.w, tol)?,
        target: r.endpoint,
        c_ab: r.value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Independent,
    Dependent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathPair {
    pub first: usize,
    pub second: usize,
    /// `c_ab(first) - c_ab(second)`: the period of the closed loop
    /// `first · reverse(second)`.
    pub period: Complex64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueEntry {
    pub center: Complex64,
    pub sheets: Vec<usize>,
    pub residue: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub values: Vec<Complex64>,
    pub pairs: Vec<PathPair>,
    pub max_discrepancy: f64,
    pub verdict: Verdict,
    pub enclosed_residue_data: Vec<ResidueEntry>,
}

/// Compare `c_{a,b}` along several paths between the same germs.
pub fn path_independence_audit(
    eq: &DefiningEquation,
    base: &SurfacePoint,
    target: &SurfacePoint,
    paths: &[BasePath],
    tol: &Tolerances,
) -> Result<AuditReport> {
    let values = paths
        .iter()
        .map(|p| c_ab(eq, base, target, p, tol).map(|e| e.c_ab))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let period = values[i] - values[j];
            pairs.push(PathPair {
                first: i,
                second: j,
                period,
                discrepancy: period.norm(),
            });
        }
    }
    let max_discrepancy = pairs.iter().map(|p| p.discrepancy).fold(0.0, f64::max);
    let mut enclosed_residue_data = Vec::new();
    for cp in eq.critical_set().locations() {
        for cy in singular_elements(eq, cp, DEFAULT_N_MAX, None, tol)?.cycles {
            enclosed_residue_data.push(ResidueEntry {
                center: cp,
                sheets: cy.sheets,
                residue: cy.residue,
            });
        }
    }
    Ok(AuditReport {
        values,
        pairs,
        max_discrepancy,
        verdict: if max_discrepancy < tol.audit {
            Verdict::Independent
        } else {
            Verdict::Dependent
        },
        enclosed_residue_data,
    })
}

/// `|(c_{a,b} + ∫_b^u w) - c_{a,u}|`, where the first term continues the
/// element along `local_path` (b → u) and `c_{a,u}` is recomputed from the
/// base along `base_route` (a → u).
pub fn integral_element_continuation_check(
    eq: &DefiningEquation,
    element: &IntegralElement,
    probe: &SurfacePoint,
    local_path: &BasePath,
    base_route: &BasePath,
    tol: &Tolerances,
) -> Result<f64> {
    let local = c_ab(eq, &element.target, probe, local_path, tol)?;
    let direct = c_ab(eq, &element.base, probe, base_route, tol)?;
    Ok((element.c_ab + local.c_ab - direct.c_ab).norm())
}
