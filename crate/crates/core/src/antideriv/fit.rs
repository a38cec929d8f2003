use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{horner, GaussianRational, Poly, RatFunc};

/// Largest denominator tried when snapping fitted coefficients to rationals.
const SNAP_DEN: i64 = 10_000;
/// Relative distance within which a fitted coefficient snaps.
const SNAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalFit {
    pub function: RatFunc,
    /// Max relative deviation `|v - p/q| / max |v|` over the samples.
    pub residual: f64,
    /// `[numerator degree, denominator degree]` of the accepted candidate.
    pub degrees: [usize; 2],
}

/// Expand `Σ c_i ((z - center) / rho)^i` into ascending powers of `z`.
fn uncenter(c: &[Complex64], center: Complex64, rho: f64) -> Vec<Complex64> {
    let lin = [-center / rho, Complex64::new(1.0 / rho, 0.0)];
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for &ci in c.iter().rev() {
        // out = out * lin + ci
        let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
        for (i, &o) in out.iter().enumerate() {
            next[i] += o * lin[0];
            next[i + 1] += o * lin[1];
        }
        next[0] += ci;
        out = next;
    }
    out.truncate(c.len().max(1));
    out
}

fn max_deviation(samples: &[(Complex64, Complex64)], num: &[Complex64], den: &[Complex64], vmax: f64) -> f64 {
    samples
        .iter()
        .map(|&(z, v)| (v - horner(num, z) / horner(den, z)).norm())
        .fold(0.0, f64::max)
        / vmax
}

fn snap_poly(c: &[Complex64], exact_binary: bool) -> Poly {
    let scale = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    Poly::new(
        c.iter()
            .map(|&x| {
                if x.norm() <= SNAP_TOL * scale {
                    GaussianRational::zero()
                } else if exact_binary {
                    GaussianRational::from_c64_exact(x)
                } else {
                    GaussianRational::rationalize(x, SNAP_DEN, SNAP_TOL)
                }
            })
            .collect(),
    )
}

/// Least-squares solution of `v q(z) - p(z) ≈ 0` with `q` monic, for fixed degrees.
fn solve_candidate(
    samples: &[(Complex64, Complex64)],
    dp: usize,
    dq: usize,
    center: Complex64,
    rho: f64,
) -> Option<(Vec<Complex64>, Vec<Complex64>)> {
    let rows = samples.len();
    let cols = dp + 1 + dq;
    let mut a = DMatrix::<Complex64>::zeros(rows, cols);
    let mut b = DVector::<Complex64>::zeros(rows);
    for (r, &(z, v)) in samples.iter().enumerate() {
        let x = (z - center) / rho;
        let mut xp = Complex64::new(1.0, 0.0);
        for i in 0..=dp.max(dq) {
            if i <= dp {
                a[(r, i)] = xp;
            }
            if i < dq {
                a[(r, dp + 1 + i)] = -v * xp;
            }
            if i == dq {
                b[r] = v * xp;
            }
            xp *= x;
        }
    }
    let sol = a.svd(true, true).solve(&b, 1e-14).ok()?;
    let p: Vec<Complex64> = sol.iter().take(dp + 1).copied().collect();
    let mut q: Vec<Complex64> = sol.iter().skip(dp + 1).copied().collect();
    q.push(Complex64::new(1.0, 0.0));
    if p.iter().chain(&q).any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return None;
    }
    Some((uncenter(&p, center, rho), uncenter(&q, center, rho)))
}

/// Fit a rational function to `(z, value)` samples, trying degree pairs in
/// order of total degree (smaller denominators first) up to `bounds`.
pub fn fit_rational(samples: &[(Complex64, Complex64)], bounds: (usize, usize), fit_tol: f64) -> Result<RationalFit> {
    fit_rational_scaled(samples, bounds, fit_tol, 0.0)
}

/// As [`fit_rational`], with residuals measured against `max(max |v|, floor)`;
/// samples that all lie below `fit_tol · floor` fit the zero function.
pub(crate) fn fit_rational_scaled(
    samples: &[(Complex64, Complex64)],
    bounds: (usize, usize),
    fit_tol: f64,
    floor: f64,
) -> Result<RationalFit> {
    let raw_max = samples.iter().map(|s| s.1.norm()).fold(0.0, f64::max);
    if raw_max == 0.0 || raw_max < fit_tol * floor {
        return Ok(RationalFit {
            function: RatFunc::zero(),
            residual: raw_max / floor.max(f64::MIN_POSITIVE),
            degrees: [0, 0],
        });
    }
    let vmax = raw_max.max(floor);
    let n = samples.len() as f64;
    let center = samples.iter().map(|s| s.0).sum::<Complex64>() / n;
    let rho = samples.iter().map(|s| (s.0 - center).norm()).fold(0.0, f64::max).max(1e-12);
    let mut best = f64::INFINITY;
    for total in 0..=bounds.0 + bounds.1 {
        for dq in 0..=total.min(bounds.1) {
            let dp = total - dq;
            if dp > bounds.0 || samples.len() < dp + dq + 2 {
                continue;
            }
            let Some((p, q)) = solve_candidate(samples, dp, dq, center, rho) else {
                continue;
            };
            let residual = max_deviation(samples, &p, &q, vmax);
            best = best.min(residual);
            if residual >= fit_tol {
                continue;
            }
            // normalise q to be monic in z, then snap to simple rationals
            let lead = q[dq];
            let p: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
            let q: Vec<Complex64> = q.iter().map(|c| c / lead).collect();
            for exact_binary in [false, true] {
                let (num, den) = (snap_poly(&p, exact_binary), snap_poly(&q, exact_binary));
                let Ok(function) = RatFunc::new(num, den) else {
                    continue;
                };
                let snapped = max_deviation(samples, &function.num().to_c64(), &function.den().to_c64(), vmax);
                if snapped < fit_tol {
                    return Ok(RationalFit {
                        function,
                        residual: snapped,
                        degrees: [dp, dq],
                    });
                }
            }
        }
    }
    Err(Error::FitNotConverged { residual: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_coefficient;

    fn circle(radius: f64, count: usize, f: impl Fn(Complex64) -> Complex64) -> Vec<(Complex64, Complex64)> {
        (0..count)
            .map(|j| {
                let z = Complex64::from_polar(radius, 0.1 + std::f64::consts::TAU * j as f64 / count as f64);
                (z, f(z))
            })
            .collect()
    }

    #[test]
    fn exact_cubic() {
        let s = circle(2.0, 24, |z| -4.0 / 9.0 * z * z * z);
        let fit = fit_rational(&s, (6, 6), 1e-8).unwrap();
        assert_eq!(fit.function, parse_coefficient("-4/9*z^3").unwrap());
        assert!(fit.residual < 1e-8);
        assert_eq!(fit.degrees, [3, 0]);
    }

    #[test]
    fn zero_and_simple_pole() {
        let s = circle(2.0, 12, |_| Complex64::new(0.0, 0.0));
        assert!(fit_rational(&s, (3, 3), 1e-8).unwrap().function.is_zero());
        let s = circle(2.0, 12, |z| 1.0 / z);
        assert_eq!(fit_rational(&s, (3, 3), 1e-8).unwrap().function, parse_coefficient("1/z").unwrap());
    }

    #[test]
    fn off_centre_rational() {
        let f = parse_coefficient("(z^2 - i)/(z - 3/2)").unwrap();
        let mut s = circle(1.0, 16, |z| f.eval_c64(z));
        s.extend(circle(0.5, 16, |z| f.eval_c64(z)));
        assert_eq!(fit_rational(&s, (4, 4), 1e-8).unwrap().function, f);
    }

    #[test]
    fn not_converged() {
        let s = circle(1.0, 20, |z| z.exp());
        assert!(matches!(fit_rational(&s, (2, 2), 1e-8), Err(Error::FitNotConverged { .. })));
    }
}
