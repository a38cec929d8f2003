use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{fiber_at, DefiningEquation};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;
use crate::tracker::{track_fiber, BasePath, Segment};

/// Sheet `j` of the start fiber continues to sheet `image[j]` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SheetPermutation {
    pub image: Vec<usize>,
}

impl SheetPermutation {
    pub fn identity(k: usize) -> Self {
        SheetPermutation {
            image: (0..k).collect(),
        }
    }

    /// `None` unless `image` is a bijection on `0..len`.
    pub fn from_image(image: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(SheetPermutation { image })
    }

    pub fn k(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }

    /// Follow `self`, then `next` (the monodromy of a concatenated loop).
    pub fn then(&self, next: &SheetPermutation) -> SheetPermutation {
        SheetPermutation {
            image: self.image.iter().map(|&j| next.image[j]).collect(),
        }
    }

    pub fn inverse(&self) -> SheetPermutation {
        let mut image = vec![0; self.k()];
        for (j, &i) in self.image.iter().enumerate() {
            image[i] = j;
        }
        SheetPermutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &i)| i == j)
    }

    /// Cycles, each listed from its smallest sheet in the order visited.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.k()];
        let mut out = Vec::new();
        for start in 0..self.k() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.image[j];
            }
            out.push(cycle);
        }
        out
    }
}

/// Orbits of the group generated by `perms` on `0..k`, each sorted,
/// ordered by smallest element.
pub fn orbits(k: usize, perms: &[SheetPermutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..k).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for p in perms {
        for j in 0..k {
            let (a, b) = (root(&mut parent, j), root(&mut parent, p.image[j]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; k];
    for j in 0..k {
        let r = root(&mut parent, j);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(j);
    }
    groups
}

/// Permutation of the canonical fiber over the start of a closed `loop`.
pub fn monodromy(eq: &DefiningEquation, loop_: &BasePath, tol: &Tolerances) -> Result<SheetPermutation> {
    let Some(z0) = loop_.start() else {
        return Ok(SheetPermutation::identity(eq.k()));
    };
    if !loop_.is_closed() {
        return Err(Error::InvalidPath("monodromy needs a closed loop".into()));
    }
    let fiber = fiber_at(eq, z0, tol)?;
    let track = track_fiber(eq, &fiber.roots, loop_, tol, |_| Ok(()))?;
    let image: Vec<usize> = track
        .roots
        .iter()
        .map(|w| fiber.match_root(*w))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidPath("tracked loop did not return to the start fiber".into()))?;
    SheetPermutation::from_image(image).ok_or(Error::TrackingCollision {
        z: z0,
        separation: track.min_root_separation,
    })
}

/// A loop from the base around exactly one critical point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub critical: Complex64,
    pub radius: f64,
    pub path: BasePath,
    pub permutation: SheetPermutation,
}

/// Does the straight line `a → b` stay clear of every disk except `skip`?
fn clear(a: Complex64, b: Complex64, disks: &[(Complex64, f64)], skip: usize) -> bool {
    let seg = Segment::line(a, b);
    disks
        .iter()
        .enumerate()
        .all(|(j, &(c, r))| j == skip || seg.distance_to(c) >= r)
}

/// Does the line from `from` to `anchor` on the circle about `c` stay outside it?
fn meets_circle_outside(c: Complex64, anchor: Complex64, from: Complex64) -> bool {
    ((anchor - c) * (from - anchor).conj()).re >= 0.0
}

/// Loop about `disks[idx]` from `base`: spoke, one counterclockwise turn,
/// spoke back. The spoke is straight when possible; otherwise its anchor
/// angle is rotated, and as a last resort it bends at one via point.
fn generator_path(base: Complex64, disks: &[(Complex64, f64)], idx: usize) -> Option<BasePath> {
    let (c, r) = disks[idx];
    let phi0 = (base - c).arg();
    let build = |via: Option<Complex64>, phi: f64| {
        let anchor = c + Complex64::from_polar(r, phi);
        let mut segs = Vec::new();
        let push_line = |a: Complex64, b: Complex64, segs: &mut Vec<Segment>| {
            if (a - b).norm() > 0.0 {
                segs.push(Segment::line(a, b));
            }
        };
        match via {
            Some(v) => {
                push_line(base, v, &mut segs);
                push_line(v, anchor, &mut segs);
            }
            None => push_line(base, anchor, &mut segs),
        }
        segs.push(Segment::arc(c, r, phi, phi + 2.0 * PI));
        match via {
            Some(v) => {
                push_line(anchor, v, &mut segs);
                push_line(v, base, &mut segs);
            }
            None => push_line(anchor, base, &mut segs),
        }
        BasePath::new(segs).ok()
    };
    for step in 0..=32 {
        for sign in [1.0, -1.0] {
            if step == 0 && sign < 0.0 {
                continue;
            }
            let phi = phi0 + sign * step as f64 * PI / 32.0;
            let anchor = c + Complex64::from_polar(r, phi);
            if meets_circle_outside(c, anchor, base) && clear(base, anchor, disks, idx) {
                return build(None, phi);
            }
        }
    }
    let dist = (base - c).norm();
    let normal = (c - base) / dist * Complex64::i();
    for step in 1..=64 {
        for sign in [1.0, -1.0] {
            let offset = sign * step as f64 * dist / 16.0;
            let via = base + (c - base) * 0.5 + normal * offset;
            let phi = (via - c).arg();
            let anchor = c + Complex64::from_polar(r, phi);
            let in_disk = disks.iter().any(|&(d, rd)| (via - d).norm() < rd);
            if !in_disk && clear(base, via, disks, usize::MAX) && clear(via, anchor, disks, idx) {
                return build(Some(via), phi);
            }
        }
    }
    None
}

/// One generator per critical point. Circle radii are half the distance to
/// the nearest other critical point, capped at half the distance to `base`.
pub fn monodromy_generators(
    eq: &DefiningEquation,
    base: Complex64,
    tol: &Tolerances,
) -> Result<Vec<Generator>> {
    let crit = eq.critical_set();
    fiber_at(eq, base, tol)?;
    let disks: Vec<(Complex64, f64)> = crit
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let r = (0.5 * crit.isolation(i)).min(0.5 * (base - p.location).norm());
            (p.location, r)
        })
        .collect();
    let mut out = Vec::with_capacity(disks.len());
    for (idx, &(c, radius)) in disks.iter().enumerate() {
        let path = generator_path(base, &disks, idx).ok_or_else(|| {
            Error::InvalidPath(format!("no spoke from {base} to the critical point {c} avoids the others"))
        })?;
        let permutation = monodromy(eq, &path, tol)?;
        out.push(Generator {
            critical: c,
            radius,
            path,
            permutation,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "verdict", content = "orbits")]
pub enum Irreducibility {
    Transitive,
    Intransitive(Vec<Vec<usize>>),
}

impl Irreducibility {
    pub fn is_transitive(&self) -> bool {
        matches!(self, Irreducibility::Transitive)
    }
}

/// Whether the monodromy group acts transitively on the sheets over `base`.
pub fn irreducibility_check(eq: &DefiningEquation, base: Complex64, tol: &Tolerances) -> Result<Irreducibility> {
    if eq.k() == 1 {
        return Ok(Irreducibility::Transitive);
    }
    let perms: Vec<_> = monodromy_generators(eq, base, tol)?
        .into_iter()
        .map(|g| g.permutation)
        .collect();
    Ok(verdict(orbits(eq.k(), &perms)))
}

pub(crate) fn verdict(orbits: Vec<Vec<usize>>) -> Irreducibility {
    if orbits.len() == 1 {
        Irreducibility::Transitive
    } else {
        Irreducibility::Intransitive(orbits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracker::{loop_path, reverse};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn eq(coeffs: &[&str]) -> DefiningEquation {
        DefiningEquation::parse(coeffs).unwrap()
    }

    #[test]
    fn spec_loops() {
        let tol = Tolerances::default();
        let unit = loop_path(c(0.0, 0.0), 1.0, 1, c(1.0, 0.0));
        assert_eq!(monodromy(&eq(&["0", "-z"]), &unit, &tol).unwrap().image, vec![1, 0]);
        assert!(monodromy(&eq(&["0", "-z^2"]), &unit, &tol).unwrap().is_identity());
        let big = loop_path(c(0.0, 0.0), 3.0, 1, c(3.0, 0.0));
        assert!(monodromy(&eq(&["0", "-(1+z^2)"]), &big, &tol).unwrap().is_identity());
        // a circle that encloses nothing
        let away = loop_path(c(5.0, 0.0), 1.0, 1, c(4.0, 0.0));
        assert!(monodromy(&eq(&["0", "-z"]), &away, &tol).unwrap().is_identity());
    }

    #[test]
    fn cube_root_is_a_three_cycle() {
        let tol = Tolerances::default();
        let unit = loop_path(c(0.0, 0.0), 1.0, 1, c(1.0, 0.0));
        let p = monodromy(&eq(&["0", "0", "-z"]), &unit, &tol).unwrap();
        assert_eq!(p.cycles().len(), 1);
        let back = monodromy(&eq(&["0", "0", "-z"]), &reverse(&unit), &tol).unwrap();
        assert_eq!(back, p.inverse());
        assert!(p.then(&back).is_identity());
    }

    #[test]
    fn irreducibility_examples() {
        let tol = Tolerances::default();
        let base = c(0.37, 0.21);
        assert_eq!(irreducibility_check(&eq(&["0", "-z"]), base, &tol).unwrap(), Irreducibility::Transitive);
        assert_eq!(
            irreducibility_check(&eq(&["0", "-z^2"]), base, &tol).unwrap(),
            Irreducibility::Intransitive(vec![vec![0], vec![1]])
        );
        assert_eq!(irreducibility_check(&eq(&["-1/z"]), base, &tol).unwrap(), Irreducibility::Transitive);
        assert!(irreducibility_check(&eq(&["0", "-(1+z^2)"]), base, &tol).unwrap().is_transitive());
    }

    #[test]
    fn spokes_avoid_collinear_critical_points() {
        // critical points at 1, 2, 3 all on the ray from base 0.2i... choose base on the axis
        let e = eq(&["0", "-(z-1)*(z-2)*(z-3)"]);
        let tol = Tolerances::default();
        let gens = monodromy_generators(&e, c(-1.0, 0.0), &tol).unwrap();
        assert_eq!(gens.len(), 3);
        for g in &gens {
            assert_eq!(g.permutation.image, vec![1, 0]);
            for other in e.critical_set().locations() {
                assert!(g.path.min_distance_to(other) > 0.0);
                let w = g.path.winding_number(other);
                assert_eq!(w, i64::from((other - g.critical).norm() < 1e-12));
            }
        }
    }

    #[test]
    fn permutation_algebra() {
        let a = SheetPermutation::from_image(vec![1, 2, 0]).unwrap();
        let b = SheetPermutation::from_image(vec![1, 0, 2]).unwrap();
        assert_eq!(a.then(&b).image, vec![0, 2, 1]);
        assert!(a.then(&a.inverse()).is_identity());
        assert!(SheetPermutation::from_image(vec![0, 0]).is_none());
        assert_eq!(orbits(4, &[SheetPermutation::from_image(vec![1, 0, 2, 3]).unwrap()]), vec![vec![0, 1], vec![2], vec![3]]);
        let json = serde_json::to_string(&Irreducibility::Intransitive(vec![vec![0], vec![1]])).unwrap();
        assert_eq!(json, r#"{"verdict":"intransitive","orbits":[[0],[1]]}"#);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::tracker::{loop_path, reverse};
    use proptest::prelude::*;

    fn random_loop() -> impl Strategy<Value = BasePath> {
        let base = Complex64::new(0.5, 1.0);
        (0usize..2, prop_oneof![Just(-2), Just(-1), Just(1), Just(2)], 0.2f64..0.45)
            .prop_map(move |(c, turns, r)| loop_path(Complex64::new(c as f64, 0.0), r, turns, base))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn reversal_inverts_and_concatenation_composes(a in random_loop(), b in random_loop()) {
            let eq = DefiningEquation::parse(&["0", "0", "-z*(z - 1)"]).unwrap();
            let tol = Tolerances::default();
            let (ma, mb) = (monodromy(&eq, &a, &tol).unwrap(), monodromy(&eq, &b, &tol).unwrap());
            prop_assert_eq!(monodromy(&eq, &reverse(&a), &tol).unwrap(), ma.inverse());
            prop_assert_eq!(monodromy(&eq, &a.then(&b).unwrap(), &tol).unwrap(), ma.then(&mb));
        }
    }
}
