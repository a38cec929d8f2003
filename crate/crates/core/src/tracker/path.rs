use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One piece of a base path, parametrized by `s ∈ [0, 1]`.
///
/// Serialized as `{"line": [[re, im], [re, im]]}` or
/// `{"arc": {"center": [re, im], "radius": r, "theta_from": a, "theta_to": b}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Segment {
    Line([Complex64; 2]),
    /// Angles in radians; any monotone sweep, including several turns.
    Arc {
        center: Complex64,
        radius: f64,
        theta_from: f64,
        theta_to: f64,
    },
}

impl Segment {
    pub fn line(from: Complex64, to: Complex64) -> Segment {
        Segment::Line([from, to])
    }

    pub fn arc(center: Complex64, radius: f64, theta_from: f64, theta_to: f64) -> Segment {
        Segment::Arc {
            center,
            radius,
            theta_from,
            theta_to,
        }
    }

    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line([a, b]) => a + (b - a) * s,
            Segment::Arc {
                center,
                radius,
                theta_from,
                theta_to,
            } => center + Complex64::from_polar(radius, theta_from + (theta_to - theta_from) * s),
        }
    }

    /// `dz/ds`.
    pub fn tangent(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line([a, b]) => b - a,
            Segment::Arc {
                radius,
                theta_from,
                theta_to,
                ..
            } => {
                let dtheta = theta_to - theta_from;
                let theta = theta_from + dtheta * s;
                Complex64::i() * Complex64::from_polar(radius, theta) * dtheta
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        match *self {
            Segment::Line([a, _]) => a,
            _ => self.point(0.0),
        }
    }

    pub fn end(&self) -> Complex64 {
        match *self {
            Segment::Line([_, b]) => b,
            _ => self.point(1.0),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Segment::Line([a, b]) => (b - a).norm(),
            Segment::Arc {
                radius,
                theta_from,
                theta_to,
                ..
            } => radius * (theta_to - theta_from).abs(),
        }
    }

    /// Angular sweep for arcs, zero for lines.
    pub fn sweep(&self) -> f64 {
        match *self {
            Segment::Line(_) => 0.0,
            Segment::Arc {
                theta_from, theta_to, ..
            } => (theta_to - theta_from).abs(),
        }
    }

    pub fn reversed(&self) -> Segment {
        match *self {
            Segment::Line([a, b]) => Segment::Line([b, a]),
            Segment::Arc {
                center,
                radius,
                theta_from,
                theta_to,
            } => Segment::Arc {
                center,
                radius,
                theta_from: theta_to,
                theta_to: theta_from,
            },
        }
    }

    /// Split at parameter `s` into two segments covering the same points.
    pub fn split(&self, s: f64) -> (Segment, Segment) {
        match *self {
            Segment::Line([a, b]) => {
                let m = self.point(s);
                (Segment::Line([a, m]), Segment::Line([m, b]))
            }
            Segment::Arc {
                center,
                radius,
                theta_from,
                theta_to,
            } => {
                let mid = theta_from + (theta_to - theta_from) * s;
                (
                    Segment::arc(center, radius, theta_from, mid),
                    Segment::arc(center, radius, mid, theta_to),
                )
            }
        }
    }

    /// Smallest distance from `p` to any point of the segment.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            Segment::Line([a, b]) => {
                let d = b - a;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (p - a).norm();
                }
                let t = ((p - a) * d.conj()).re / len2;
                (p - self.point(t.clamp(0.0, 1.0))).norm()
            }
            Segment::Arc {
                center,
                radius,
                theta_from,
                theta_to,
            } => {
                let v = p - center;
                if v.norm() == 0.0 {
                    return radius;
                }
                let (lo, hi) = if theta_from <= theta_to {
                    (theta_from, theta_to)
                } else {
                    (theta_to, theta_from)
                };
                let target = v.arg();
                // shift target into [lo, lo + 2π)
                let shifted = lo + (target - lo).rem_euclid(TAU);
                if hi - lo >= TAU || shifted <= hi {
                    (v.norm() - radius).abs()
                } else {
                    (p - self.start()).norm().min((p - self.end()).norm())
                }
            }
        }
    }

    fn is_degenerate(&self) -> bool {
        match *self {
            Segment::Line([a, b]) => a == b,
            Segment::Arc {
                radius,
                theta_from,
                theta_to,
                ..
            } => radius.is_nan() || radius <= 0.0 || theta_from == theta_to,
        }
    }

    fn is_finite(&self) -> bool {
        let ok = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        match *self {
            Segment::Line([a, b]) => ok(a) && ok(b),
            Segment::Arc {
                center,
                radius,
                theta_from,
                theta_to,
            } => ok(center) && radius.is_finite() && theta_from.is_finite() && theta_to.is_finite(),
        }
    }
}

/// Relative tolerance for "consecutive segments share an endpoint".
const JOIN_TOL: f64 = 1e-9;

fn joins(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= JOIN_TOL * (1.0 + a.norm())
}

/// A chain of segments in the base plane. The empty path stands for the
/// constant path and only arises where an operation explicitly allows it.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasePath {
    segments: Vec<Segment>,
}

impl BasePath {
    pub fn new(segments: Vec<Segment>) -> Result<BasePath> {
        for (i, s) in segments.iter().enumerate() {
            if !s.is_finite() {
                return Err(Error::InvalidPath(format!("segment {i} has non-finite data")));
            }
            if s.is_degenerate() {
                return Err(Error::InvalidPath(format!("segment {i} has zero length")));
            }
        }
        for (i, pair) in segments.windows(2).enumerate() {
            if !joins(pair[0].end(), pair[1].start()) {
                return Err(Error::InvalidPath(format!(
                    "segment {} ends at {} but segment {} starts at {}",
                    i,
                    pair[0].end(),
                    i + 1,
                    pair[1].start()
                )));
            }
        }
        Ok(BasePath { segments })
    }

    pub fn empty() -> BasePath {
        BasePath::default()
    }

    pub fn line(from: Complex64, to: Complex64) -> BasePath {
        BasePath::new(vec![Segment::line(from, to)]).expect("non-degenerate line")
    }

    /// Full circle(s) about `center` starting at angle `theta0`; negative
    /// `turns` run clockwise.
    pub fn circle(center: Complex64, radius: f64, theta0: f64, turns: f64) -> BasePath {
        BasePath::new(vec![Segment::arc(center, radius, theta0, theta0 + TAU * turns)])
            .expect("non-degenerate circle")
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn start(&self) -> Option<Complex64> {
        self.segments.first().map(Segment::start)
    }

    pub fn end(&self) -> Option<Complex64> {
        self.segments.last().map(Segment::end)
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(Segment::length).sum()
    }

    pub fn is_closed(&self) -> bool {
        match (self.start(), self.end()) {
            (Some(a), Some(b)) => joins(a, b),
            _ => true,
        }
    }

    pub fn then(&self, other: &BasePath) -> Result<BasePath> {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        BasePath::new(segments)
    }

    /// Split segment `index` at local parameter `s`.
    pub fn subdivided(&self, index: usize, s: f64) -> BasePath {
        let mut segments = self.segments.clone();
        let (a, b) = segments[index].split(s);
        segments.splice(index..=index, [a, b]);
        BasePath { segments }
    }

    pub fn min_distance_to(&self, p: Complex64) -> f64 {
        self.segments
            .iter()
            .map(|s| s.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Winding number about `p` (paths that are not closed give the
    /// fractional angle swept divided by 2π, rounded).
    pub fn winding_number(&self, p: Complex64) -> i64 {
        let mut total = 0.0;
        for seg in &self.segments {
            let n = 64 + (seg.sweep() * 16.0) as usize;
            let mut prev = (seg.point(0.0) - p).arg();
            for i in 1..=n {
                let cur = (seg.point(i as f64 / n as f64) - p).arg();
                let mut d = cur - prev;
                if d > PI {
                    d -= TAU;
                } else if d < -PI {
                    d += TAU;
                }
                total += d;
                prev = cur;
            }
        }
        (total / TAU).round() as i64
    }
}

/// `turns`-fold loop about `center` through `anchor`; if `anchor` is not on
/// the circle it is connected by a radial spoke out and back.
pub fn loop_path(center: Complex64, radius: f64, turns: i32, anchor: Complex64) -> BasePath {
    if turns == 0 {
        return BasePath::empty();
    }
    let offset = anchor - center;
    let theta0 = if offset.norm() == 0.0 { 0.0 } else { offset.arg() };
    let on_circle = center + Complex64::from_polar(radius, theta0);
    let arc = Segment::arc(center, radius, theta0, theta0 + TAU * turns as f64);
    if (offset.norm() - radius).abs() <= 1e-12 * (1.0 + radius) {
        return BasePath { segments: vec![arc] };
    }
    BasePath {
        segments: vec![
            Segment::line(anchor, on_circle),
            arc,
            Segment::line(on_circle, anchor),
        ],
    }
}

/// Same points, opposite direction.
pub fn reverse(path: &BasePath) -> BasePath {
    BasePath {
        segments: path.segments.iter().rev().map(Segment::reversed).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn loop_path_examples() {
        let one = loop_path(c(0.0, 0.0), 1.0, 1, c(1.0, 0.0));
        assert_eq!(one.segments(), &[Segment::arc(c(0.0, 0.0), 1.0, 0.0, TAU)]);
        let two = loop_path(c(0.0, 0.0), 1.0, 2, c(1.0, 0.0));
        assert_eq!(two.segments()[0].sweep(), 2.0 * TAU);
        assert_eq!(two.winding_number(c(0.0, 0.0)), 2);
        let back = loop_path(c(0.0, 0.0), 1.0, -1, c(1.0, 0.0));
        assert_eq!(back.winding_number(c(0.0, 0.0)), -1);
        let spoke = loop_path(c(0.0, 0.0), 0.5, 1, c(1.0, 0.0));
        assert_eq!(spoke.segments().len(), 3);
        assert!(spoke.is_closed());
    }

    #[test]
    fn reverse_examples() {
        let l = BasePath::line(c(1.0, 0.0), c(4.0, 0.0));
        assert_eq!(reverse(&l), BasePath::line(c(4.0, 0.0), c(1.0, 0.0)));
        let a = BasePath::circle(c(0.0, 0.0), 1.0, 0.0, 1.0);
        assert_eq!(reverse(&a).segments(), &[Segment::arc(c(0.0, 0.0), 1.0, TAU, 0.0)]);
        let two = l.then(&BasePath::line(c(4.0, 0.0), c(4.0, 3.0))).unwrap();
        let r = reverse(&two);
        assert_eq!(r.segments()[0], Segment::line(c(4.0, 3.0), c(4.0, 0.0)));
        assert_eq!(r.segments()[1], Segment::line(c(4.0, 0.0), c(1.0, 0.0)));
        assert_eq!(reverse(&r), two);
    }

    #[test]
    fn rejects_gaps_and_degenerate_segments() {
        let gap = BasePath::new(vec![
            Segment::line(c(0.0, 0.0), c(1.0, 0.0)),
            Segment::line(c(1.1, 0.0), c(2.0, 0.0)),
        ]);
        assert!(matches!(gap, Err(Error::InvalidPath(_))));
        assert!(BasePath::new(vec![Segment::arc(c(0.0, 0.0), 0.0, 0.0, 1.0)]).is_err());
    }

    #[test]
    fn distances() {
        let l = Segment::line(c(-1.0, 1.0), c(1.0, 1.0));
        assert!((l.distance_to(c(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((l.distance_to(c(3.0, 1.0)) - 2.0).abs() < 1e-15);
        let upper = Segment::arc(c(0.0, 0.0), 1.0, 0.0, PI);
        assert!((upper.distance_to(c(0.0, 2.0)) - 1.0).abs() < 1e-15);
        // below the upper half circle: closest are the endpoints ±1
        assert!((upper.distance_to(c(0.0, -1.0)) - 2f64.sqrt()).abs() < 1e-12);
        let full = Segment::arc(c(0.0, 0.0), 1.0, 3.0, 3.0 + 2.5 * TAU);
        assert!((full.distance_to(c(0.0, -0.25)) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn serde_shape() {
        let p = BasePath::new(vec![
            Segment::line(c(1.0, 0.0), c(4.0, 0.0)),
            Segment::arc(c(0.0, 0.0), 4.0, 0.0, PI),
        ])
        .unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.starts_with(r#"[{"line":[[1.0,0.0],[4.0,0.0]]},{"arc":{"center":[0.0,0.0],"radius":4.0"#));
        assert_eq!(serde_json::from_str::<BasePath>(&json).unwrap(), p);
    }
}
