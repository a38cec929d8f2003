use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::path::{BasePath, Segment};
use crate::error::{Error, Result};
use crate::surface::{fiber_at, min_separation, DefiningEquation, Fiber};
use crate::tolerances::Tolerances;

const H_MAX: f64 = 0.125;
const MAX_ARC_STEP: f64 = std::f64::consts::PI / 8.0;
const NEWTON_ITERS: usize = 12;

/// A point of the surface: `z` together with one root `w` of `Ψ(·, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub z: Complex64,
    pub w: Complex64,
    /// Index of `w` in the canonical fiber over `z`.
    pub sheet_hint: Option<usize>,
}

impl SurfacePoint {
    /// Validate `(z, w)` against the fiber and snap `w` to the polished root.
    pub fn new(eq: &DefiningEquation, z: Complex64, w: Complex64, tol: &Tolerances) -> Result<SurfacePoint> {
        let fiber = fiber_at(eq, z, tol)?;
        Self::on_fiber(&fiber, w)
    }

    pub(crate) fn on_fiber(fiber: &Fiber, w: Complex64) -> Result<SurfacePoint> {
        match fiber.match_root(w) {
            Some(i) => Ok(SurfacePoint {
                z: fiber.z,
                w: fiber.roots[i],
                sheet_hint: Some(i),
            }),
            None => Err(Error::NotOnSurface {
                z: fiber.z,
                w,
                reason: "no root of the fiber within germ tolerance".into(),
            }),
        }
    }

    /// The point on sheet `index` of the canonical fiber over `z`.
    pub fn on_sheet(eq: &DefiningEquation, z: Complex64, index: usize, tol: &Tolerances) -> Result<SurfacePoint> {
        let fiber = fiber_at(eq, z, tol)?;
        let w = *fiber.roots.get(index).ok_or_else(|| Error::NotOnSurface {
            z,
            w: Complex64::new(f64::NAN, f64::NAN),
            reason: format!("sheet index {index} out of range for k = {}", eq.k()),
        })?;
        Ok(SurfacePoint {
            z,
            w,
            sheet_hint: Some(index),
        })
    }
}

/// One sample of a tracked branch, `t = segment index + local parameter`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchSample {
    pub t: f64,
    pub z: Complex64,
    pub w: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackResult {
    pub endpoint: SurfacePoint,
    pub samples: Vec<BranchSample>,
    pub step_count: usize,
    pub min_root_separation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberSample {
    pub t: f64,
    pub z: Complex64,
    pub roots: Vec<Complex64>,
}

/// All `k` roots carried along a path; `roots[i]` at the end continues
/// `roots[i]` at the start.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberTrack {
    pub roots: Vec<Complex64>,
    pub samples: Vec<FiberSample>,
    pub step_count: usize,
    pub min_root_separation: f64,
}

/// An accepted step, handed to observers such as the quadrature.
pub struct StepRecord<'a> {
    pub segment_index: usize,
    pub segment: &'a Segment,
    pub s0: f64,
    pub s1: f64,
    pub roots0: &'a [Complex64],
    pub roots1: &'a [Complex64],
}

pub(crate) fn path_margin(eq: &DefiningEquation, tol: &Tolerances) -> f64 {
    tol.path_margin
        .unwrap_or_else(|| eq.critical_set().default_margin())
}

/// Refuse paths that come closer than the margin to a critical point.
pub(crate) fn check_margin(eq: &DefiningEquation, path: &BasePath, tol: &Tolerances) -> Result<()> {
    let margin = path_margin(eq, tol);
    for cp in eq.critical_set().locations() {
        let d = path.min_distance_to(cp);
        if d < margin {
            return Err(Error::PathTooCloseToCritical {
                critical: cp,
                distance: d,
                margin,
            });
        }
    }
    Ok(())
}

fn effective_separation(roots: &[Complex64]) -> f64 {
    let sep = min_separation(roots);
    if sep.is_finite() {
        sep
    } else {
        1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }
}

enum Reject {
    Collision(f64),
    Other,
}

/// One predictor–corrector step from `(z0, roots0)` to `z1`.
fn attempt(
    eq: &DefiningEquation,
    roots0: &[Complex64],
    z0: Complex64,
    z1: Complex64,
    tol: &Tolerances,
) -> std::result::Result<Vec<Complex64>, Reject> {
    let dz = z1 - z0;
    let sep0 = effective_separation(roots0);
    let mut pred = Vec::with_capacity(roots0.len());
    let mut corr = Vec::with_capacity(roots0.len());
    for &w in roots0 {
        let p = w + eq.dwdz(w, z0) * dz;
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(Reject::Other);
        }
        let c = eq.newton(p, z1, tol.root, NEWTON_ITERS).ok_or(Reject::Other)?;
        if (c - w).norm() > 0.25 * sep0 {
            return Err(Reject::Other);
        }
        pred.push(p);
        corr.push(c);
    }
    for i in 0..corr.len() {
        let d = (corr[i] - pred[i]).norm();
        for j in 0..corr.len() {
            if i != j && (corr[i] - corr[j]).norm() <= 2.0 * d {
                return Err(Reject::Other);
            }
        }
    }
    let wmax = corr.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let sep1 = min_separation(&corr);
    if sep1 <= tol.separation * (1.0 + wmax) {
        return Err(Reject::Collision(sep1));
    }
    Ok(corr)
}

/// Track every root of the fiber along `path`, calling `on_step` for each
/// accepted step. `roots` must be the fiber over the start of the path.
pub(crate) fn track_fiber<F>(
    eq: &DefiningEquation,
    roots: &[Complex64],
    path: &BasePath,
    tol: &Tolerances,
    mut on_step: F,
) -> Result<FiberTrack>
where
    F: FnMut(&StepRecord) -> Result<()>,
{
    check_margin(eq, path, tol)?;
    let mut current = roots.to_vec();
    let mut min_sep = min_separation(&current);
    let mut step_count = 0;
    let mut samples = Vec::new();
    if let Some(z) = path.start() {
        samples.push(FiberSample {
            t: 0.0,
            z,
            roots: current.clone(),
        });
    }
    let crit: Vec<Complex64> = eq.critical_set().locations().collect();
    for (index, seg) in path.segments().iter().enumerate() {
        let mut h_max = H_MAX;
        if seg.sweep() > 0.0 {
            h_max = h_max.min(MAX_ARC_STEP / seg.sweep());
        }
        let mut s = 0.0;
        let mut h = h_max;
        let mut z0 = seg.start();
        while s < 1.0 {
            // never step across more than half the distance to a critical point
            let dist = crit.iter().map(|c| (c - z0).norm()).fold(f64::INFINITY, f64::min);
            let speed = seg.tangent(s).norm();
            let cap = if speed > 0.0 { 0.5 * dist / speed } else { h_max };
            let hh = h.min(cap).min(h_max);
            let s1 = if s + hh >= 1.0 - 1e-14 { 1.0 } else { s + hh };
            let z1 = if s1 == 1.0 { seg.end() } else { seg.point(s1) };
            match attempt(eq, &current, z0, z1, tol) {
                Ok(next) => {
                    on_step(&StepRecord {
                        segment_index: index,
                        segment: seg,
                        s0: s,
                        s1,
                        roots0: &current,
                        roots1: &next,
                    })?;
                    min_sep = min_sep.min(min_separation(&next));
                    current = next;
                    step_count += 1;
                    samples.push(FiberSample {
                        t: index as f64 + s1,
                        z: z1,
                        roots: current.clone(),
                    });
                    s = s1;
                    z0 = z1;
                    h = (2.0 * hh).min(h_max);
                }
                Err(reason) => {
                    h = 0.5 * hh;
                    if h < tol.step_min {
                        return Err(match reason {
                            Reject::Collision(separation) => Error::TrackingCollision { z: z1, separation },
                            Reject::Other => Error::StepUnderflow { z: z0 },
                        });
                    }
                }
            }
        }
    }
    Ok(FiberTrack {
        roots: current,
        samples,
        step_count,
        min_root_separation: min_sep,
    })
}

pub(crate) fn check_start(path: &BasePath, z: Complex64) -> Result<()> {
    if let Some(a) = path.start() {
        if (a - z).norm() > 1e-9 * (1.0 + z.norm()) {
            return Err(Error::PathStartMismatch { expected: z, found: a });
        }
    }
    Ok(())
}

/// Analytic continuation of the germ at `start` along `path`.
pub fn continue_branch(
    eq: &DefiningEquation,
    start: &SurfacePoint,
    path: &BasePath,
    tol: &Tolerances,
) -> Result<TrackResult> {
    check_start(path, start.z)?;
    let fiber = fiber_at(eq, start.z, tol)?;
    let sheet = SurfacePoint::on_fiber(&fiber, start.w)?
        .sheet_hint
        .expect("on_fiber sets the sheet");
    let track = track_fiber(eq, &fiber.roots, path, tol, |_| Ok(()))?;
    let end_z = path.end().unwrap_or(start.z);
    let end_fiber = fiber_at(eq, end_z, tol)?;
    let endpoint = SurfacePoint::on_fiber(&end_fiber, track.roots[sheet])?;
    let samples = track
        .samples
        .iter()
        .map(|s| BranchSample {
            t: s.t,
            z: s.z,
            w: s.roots[sheet],
        })
        .collect();
    Ok(TrackResult {
        endpoint,
        samples,
        step_count: track.step_count,
        min_root_separation: track.min_root_separation,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::tracker::loop_path;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sqrt_changes_sign_once_around() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        let tol = Tolerances::default();
        let start = SurfacePoint::new(&eq, c(1.0, 0.0), c(1.0, 0.0), &tol).unwrap();
        let r = continue_branch(&eq, &start, &loop_path(c(0.0, 0.0), 1.0, 1, c(1.0, 0.0)), &tol).unwrap();
        assert!((r.endpoint.w - c(-1.0, 0.0)).norm() < 1e-12);
        let r = continue_branch(&eq, &start, &loop_path(c(0.0, 0.0), 1.0, 2, c(1.0, 0.0)), &tol).unwrap();
        assert!((r.endpoint.w - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn tracked_values_follow_the_closed_form() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        let tol = Tolerances::default();
        let start = SurfacePoint::new(&eq, c(1.0, 0.0), c(1.0, 0.0), &tol).unwrap();
        let path = BasePath::circle(c(0.0, 0.0), 1.0, 0.0, 0.5);
        let r = continue_branch(&eq, &start, &path, &tol).unwrap();
        for s in &r.samples {
            let theta = PI * s.t;
            assert!((s.w - Complex64::from_polar(1.0, theta / 2.0)).norm() < 1e-11);
        }
        assert!((r.endpoint.w - c(0.0, 1.0)).norm() < 1e-12);
        assert!(r.samples.len() >= 4);
    }

    #[test]
    fn refuses_paths_near_critical_points() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        let tol = Tolerances::default();
        let start = SurfacePoint::new(&eq, c(-1.0, 1e-4), c(0.0, 1.0), &tol).unwrap();
        let path = BasePath::line(c(-1.0, 1e-4), c(1.0, 1e-4));
        assert!(matches!(
            continue_branch(&eq, &start, &path, &tol),
            Err(Error::PathTooCloseToCritical { .. })
        ));
    }

    #[test]
    fn start_mismatch_and_not_on_surface() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        let tol = Tolerances::default();
        let start = SurfacePoint::new(&eq, c(1.0, 0.0), c(1.0, 0.0), &tol).unwrap();
        assert!(matches!(
            continue_branch(&eq, &start, &BasePath::line(c(2.0, 0.0), c(3.0, 0.0)), &tol),
            Err(Error::PathStartMismatch { .. })
        ));
        assert!(matches!(
            SurfacePoint::new(&eq, c(1.0, 0.0), c(0.3, 0.0), &tol),
            Err(Error::NotOnSurface { .. })
        ));
    }

    #[test]
    fn stepping_is_finer_near_branch_points() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        let tol = Tolerances::default();
        let near = SurfacePoint::on_sheet(&eq, c(0.01, 0.0), 1, &tol).unwrap();
        let far = SurfacePoint::on_sheet(&eq, c(10.0, 0.0), 1, &tol).unwrap();
        let a = continue_branch(&eq, &near, &loop_path(c(0.0, 0.0), 0.01, 1, c(0.01, 0.0)), &tol).unwrap();
        let b = continue_branch(&eq, &far, &BasePath::line(c(10.0, 0.0), c(10.0, 1.0)), &tol).unwrap();
        assert!((a.endpoint.w + near.w).norm() < 1e-12);
        assert!(a.min_root_separation < b.min_root_separation);
    }
}
