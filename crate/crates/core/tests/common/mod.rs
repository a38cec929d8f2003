#![allow(dead_code)]

use algebroid::surface::DefiningEquation;
use algebroid::tracker::{BasePath, Segment};
use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn eq(coeffs: &[&str]) -> DefiningEquation {
    DefiningEquation::parse(coeffs).expect("valid test equation")
}

/// A random admissible path from `start` that keeps at least `clearance`
/// from the origin: a short polyline, sometimes finished by an arc about 0.
pub fn random_path<R: Rng>(rng: &mut R, start: Complex64, clearance: f64) -> BasePath {
    loop {
        let mut segs = Vec::new();
        let mut at = start;
        for _ in 0..rng.gen_range(1..=3) {
            let next = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if next.norm() < 2.0 * clearance {
                continue;
            }
            segs.push(Segment::line(at, next));
            at = next;
        }
        if rng.gen_bool(0.3) {
            let theta = at.arg();
            segs.push(Segment::arc(c(0.0, 0.0), at.norm(), theta, theta + rng.gen_range(-4.0..4.0)));
        }
        if segs.is_empty() || segs.iter().any(|s| s.distance_to(c(0.0, 0.0)) < clearance) {
            continue;
        }
        if let Ok(p) = BasePath::new(segs) {
            return p;
        }
    }
}

/// Split a path at its midpoint (by segment, then by local parameter).
pub fn halves(path: &BasePath) -> (BasePath, BasePath) {
    let segs = path.segments();
    if segs.len() > 1 {
        let m = segs.len() / 2;
        let a = BasePath::new(segs[..m].to_vec()).unwrap();
        let b = BasePath::new(segs[m..].to_vec()).unwrap();
        (a, b)
    } else {
        let (x, y) = segs[0].split(0.5);
        (BasePath::new(vec![x]).unwrap(), BasePath::new(vec![y]).unwrap())
    }
}
