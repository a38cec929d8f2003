use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactalg::{Poly, RatFunc};
use crate::roots::poly_roots;

/// Critical points closer than this (relative to `1 + |z|`) merge.
const CLUSTER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriticalKind {
    DiscriminantZero,
    CoefficientPole,
    Both,
}

impl CriticalKind {
    fn merge(self, other: CriticalKind) -> CriticalKind {
        if self == other {
            self
        } else {
            CriticalKind::Both
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub location: Complex64,
    pub kind: CriticalKind,
}

/// Finite critical set, sorted by (real, imaginary) part.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
}

impl CriticalSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn locations(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().map(|p| p.location)
    }

    /// Distance scale: the diameter of the set, or 1 if that is smaller.
    pub fn scale(&self) -> f64 {
        let mut d = 1.0f64;
        for a in self.locations() {
            for b in self.locations() {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// Default margin paths keep from critical points.
    pub fn default_margin(&self) -> f64 {
        1e-3 * self.scale()
    }

    /// Nearest critical point and its distance.
    pub fn nearest(&self, z: Complex64) -> Option<(CriticalPoint, f64)> {
        self.points
            .iter()
            .map(|p| (*p, (p.location - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Distance from `points[idx]` to the closest other critical point.
    pub fn isolation(&self, idx: usize) -> f64 {
        let a = self.points[idx].location;
        self.points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, p)| (p.location - a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Index of the critical point within clustering distance of `z`.
    pub fn find(&self, z: Complex64) -> Option<usize> {
        self.points
            .iter()
            .position(|p| (p.location - z).norm() <= CLUSTER_TOL * (1.0 + z.norm()))
    }

    /// Re-cluster with a different tolerance (stability diagnostics).
    pub fn reclustered(&self, tol: f64) -> CriticalSet {
        let mut out = CriticalSet::default();
        for p in &self.points {
            insert(&mut out.points, p.location, p.kind, tol);
        }
        sort_points(&mut out.points);
        out
    }
}

fn insert(points: &mut Vec<CriticalPoint>, z: Complex64, kind: CriticalKind, tol: f64) {
    match points
        .iter_mut()
        .find(|p| (p.location - z).norm() <= tol * (1.0 + z.norm()))
    {
        Some(p) => p.kind = p.kind.merge(kind),
        // adding +0 turns a negative zero into a positive one
        None => points.push(CriticalPoint {
            location: z + Complex64::new(0.0, 0.0),
            kind,
        }),
    }
}

fn sort_points(points: &mut [CriticalPoint]) {
    points.sort_by(|a, b| {
        a.location
            .re
            .total_cmp(&b.location.re)
            .then(a.location.im.total_cmp(&b.location.im))
    });
}

fn simple_roots(p: &Poly) -> Result<Vec<Complex64>> {
    if p.is_constant() {
        return Ok(Vec::new());
    }
    poly_roots(&p.squarefree_part().to_c64())
}

/// Zeros of the discriminant numerator together with poles of every `A_j`.
pub(crate) fn compute_critical_set(discriminant: &RatFunc, coeffs: &[RatFunc]) -> Result<CriticalSet> {
    let mut points = Vec::new();
    for z in simple_roots(discriminant.num())? {
        insert(&mut points, z, CriticalKind::DiscriminantZero, CLUSTER_TOL);
    }
    for a in coeffs {
        for z in simple_roots(a.den())? {
            insert(&mut points, z, CriticalKind::CoefficientPole, CLUSTER_TOL);
        }
    }
    sort_points(&mut points);
    Ok(CriticalSet { points })
}
