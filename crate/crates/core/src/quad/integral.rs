use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gauss::rule;
use crate::error::{Error, Result};
use crate::surface::{fiber_at, min_separation, DefiningEquation};
use crate::tolerances::Tolerances;
use crate::tracker::{check_start, track_fiber, BasePath, FiberTrack, StepRecord, SurfacePoint};

const MAX_DEPTH: u32 = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceIntegralResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub endpoint: SurfacePoint,
    pub closed_on_surface: bool,
}

/// Integrals of every sheet along one path, with the underlying track.
pub(crate) struct FiberIntegral {
    pub track: FiberTrack,
    pub values: Vec<Complex64>,
    pub error: f64,
}

/// The fiber at local parameter `s` of an accepted step, found by Newton
/// from the linear interpolation of the step's end fibers.
fn roots_at(eq: &DefiningEquation, rec: &StepRecord, s: f64, tol: &Tolerances) -> Option<Vec<Complex64>> {
    let z = rec.segment.point(s);
    let lambda = (s - rec.s0) / (rec.s1 - rec.s0);
    let sep = min_separation(rec.roots0).min(min_separation(rec.roots1));
    let guard = if sep.is_finite() { 0.25 * sep } else { f64::INFINITY };
    rec.roots0
        .iter()
        .zip(rec.roots1)
        .map(|(a, b)| {
            let guess = a + (b - a) * lambda;
            eq.newton(guess, z, tol.root, 8)
                .filter(|w| (w - guess).norm() <= guard)
        })
        .collect()
}

/// 16-point Gauss–Legendre estimate of `∫ w_i dz` over `s ∈ [a, b]` for each sheet.
fn gauss_piece(
    eq: &DefiningEquation,
    rec: &StepRecord,
    a: f64,
    b: f64,
    tol: &Tolerances,
) -> Option<Vec<Complex64>> {
    let (nodes, weights) = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = vec![Complex64::new(0.0, 0.0); rec.roots0.len()];
    for (x, w) in nodes.iter().zip(weights) {
        let s = mid + half * x;
        let roots = roots_at(eq, rec, s, tol)?;
        let dz = rec.segment.tangent(s);
        for (acc, r) in acc.iter_mut().zip(&roots) {
            *acc += r * dz * (w * half);
        }
    }
    Some(acc)
}

/// Adaptive bisection over one tracking step. Returns the per-sheet values
/// and the accumulated whole-versus-halves estimate.
fn integrate_step(eq: &DefiningEquation, rec: &StepRecord, tol: &Tolerances) -> Result<(Vec<Complex64>, f64)> {
    let k = rec.roots0.len();
    let mut total = vec![Complex64::new(0.0, 0.0); k];
    let mut err = 0.0;
    let stall = |a: f64, b: f64| Error::QuadratureStall {
        length: rec.segment.length() * (b - a),
    };
    let mut stack = vec![(rec.s0, rec.s1, None::<Vec<Complex64>>, 0u32)];
    while let Some((a, b, whole, depth)) = stack.pop() {
        let whole = match whole {
            Some(w) => w,
            None => match gauss_piece(eq, rec, a, b, tol) {
                Some(w) => w,
                None => {
                    if depth >= MAX_DEPTH {
                        return Err(stall(a, b));
                    }
                    let m = 0.5 * (a + b);
                    stack.push((m, b, None, depth + 1));
                    stack.push((a, m, None, depth + 1));
                    continue;
                }
            },
        };
        let m = 0.5 * (a + b);
        let (left, right) = match (gauss_piece(eq, rec, a, m, tol), gauss_piece(eq, rec, m, b, tol)) {
            (Some(l), Some(r)) => (l, r),
            _ => {
                if depth >= MAX_DEPTH {
                    return Err(stall(a, b));
                }
                stack.push((m, b, None, depth + 1));
                stack.push((a, m, None, depth + 1));
                continue;
            }
        };
        let mut diff = 0.0f64;
        let mut ok = true;
        for i in 0..k {
            let halves = left[i] + right[i];
            let d = (whole[i] - halves).norm();
            diff = diff.max(d);
            if d > tol.quad_abs * (b - a) + tol.quad_rel * halves.norm() {
                ok = false;
            }
        }
        if ok {
            for i in 0..k {
                total[i] += left[i] + right[i];
            }
            err += diff;
        } else if depth >= MAX_DEPTH {
            return Err(stall(a, b));
        } else {
            stack.push((m, b, Some(right), depth + 1));
            stack.push((a, m, Some(left), depth + 1));
        }
    }
    Ok((total, err))
}

/// Integrate every sheet of the fiber `roots` along `path`.
pub(crate) fn integrate_fiber(
    eq: &DefiningEquation,
    roots: &[Complex64],
    path: &BasePath,
    tol: &Tolerances,
) -> Result<FiberIntegral> {
    let mut values = vec![Complex64::new(0.0, 0.0); roots.len()];
    let mut error = 0.0;
    let track = track_fiber(eq, roots, path, tol, |rec| {
        let (v, e) = integrate_step(eq, rec, tol)?;
        for (acc, x) in values.iter_mut().zip(v) {
            *acc += x;
        }
        error += e;
        Ok(())
    })?;
    Ok(FiberIntegral { track, values, error })
}

/// `∫ w dz` along the lift of `path` starting at the germ `start`.
pub fn surface_integral(
    eq: &DefiningEquation,
    start: &SurfacePoint,
    path: &BasePath,
    tol: &Tolerances,
) -> Result<SurfaceIntegralResult> {
    check_start(path, start.z)?;
    let fiber = fiber_at(eq, start.z, tol)?;
    let start = SurfacePoint::on_fiber(&fiber, start.w)?;
    let sheet = start.sheet_hint.expect("on_fiber sets the sheet");
    if path.is_empty() {
        return Ok(SurfaceIntegralResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            endpoint: start,
            closed_on_surface: true,
        });
    }
    let integral = integrate_fiber(eq, &fiber.roots, path, tol)?;
    let end_z = path.end().expect("non-empty path");
    let end_fiber = fiber_at(eq, end_z, tol)?;
    let endpoint = SurfacePoint::on_fiber(&end_fiber, integral.track.roots[sheet])?;
    let closed_on_surface = path.is_closed() && endpoint.sheet_hint == Some(sheet);
    Ok(SurfaceIntegralResult {
        value: integral.values[sheet],
        error_estimate: integral.error,
        endpoint,
        closed_on_surface,
    })
}

/// Integral over a closed base loop whose lift must close as well.
pub fn closed_loop_integral(
    eq: &DefiningEquation,
    start: &SurfacePoint,
    loop_: &BasePath,
    tol: &Tolerances,
) -> Result<SurfaceIntegralResult> {
    if !loop_.is_closed() {
        return Err(Error::PathNotClosed);
    }
    let r = surface_integral(eq, start, loop_, tol)?;
    if !r.closed_on_surface {
        let from = SurfacePoint::new(eq, start.z, start.w, tol)?.sheet_hint.unwrap_or(0);
        return Err(Error::LiftNotClosed {
            from,
            to: r.endpoint.sheet_hint.unwrap_or(0),
        });
    }
    Ok(r)
}
