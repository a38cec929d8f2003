//! All-roots solver for complex polynomials.
//!
//! Aberth–Ehrlich simultaneous iteration, falling back to the eigenvalues of
//! the companion matrix when it fails to settle. Roots are Newton-polished
//! against the input coefficients before being returned.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactalg::{horner, horner_with_derivative};

const MAX_ABERTH_ITERS: usize = 500;

fn trimmed(coeffs: &[Complex64]) -> &[Complex64] {
    let end = coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)).map_or(0, |i| i + 1);
    &coeffs[..end]
}

/// Backward-error scale `Σ |a_i| |z|^i` used in residual checks.
pub fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// All roots of the polynomial with ascending coefficients `coeffs`.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let c = trimmed(coeffs);
    let degree = c.len().saturating_sub(1);
    match degree {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-c[0] / c[1]]),
        _ => {}
    }
    let lead = c[degree];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    let mut roots = aberth(&monic).or_else(|| companion(&monic));
    if let Some(rs) = roots.as_mut() {
        for r in rs.iter_mut() {
            *r = polish(&monic, *r, 4);
        }
        let ok = rs.iter().all(|&r| {
            let (p, _) = horner_with_derivative(&monic, r);
            p.norm() <= 1e-8 * eval_scale(&monic, r).max(1e-300)
        });
        if !ok {
            roots = companion(&monic).map(|rs| rs.into_iter().map(|r| polish(&monic, r, 4)).collect());
        }
    }
    roots.ok_or(Error::RootFindingFailure { degree })
}

fn polish(monic: &[Complex64], mut z: Complex64, iters: usize) -> Complex64 {
    for _ in 0..iters {
        let (p, dp) = horner_with_derivative(monic, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        let next = z - step;
        // keep the polished value only if it does not make things worse
        if horner(monic, next).norm() > p.norm() {
            break;
        }
        z = next;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1e-300) {
            break;
        }
    }
    z
}

fn aberth(monic: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = monic.len() - 1;
    // Fujiwara-style bound for the initial circle
    let radius = (0..n)
        .map(|i| monic[i].norm().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ABERTH_ITERS {
        let mut max_rel = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_with_derivative(monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let delta = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !delta.re.is_finite() || !delta.im.is_finite() {
                return None;
            }
            z[i] -= delta;
            max_rel = max_rel.max(delta.norm() / (1.0 + z[i].norm()));
        }
        if max_rel < 1e-15 {
            return Some(z);
        }
    }
    None
}

fn companion(monic: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = monic.len() - 1;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -monic[i];
    }
    let schur = m.schur();
    let (_, t) = schur.unpack();
    let roots: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    roots.iter().all(|r| r.re.is_finite() && r.im.is_finite()).then_some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn expand(roots: &[Complex64]) -> Vec<Complex64> {
        let mut p = vec![c(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            p = next;
        }
        p
    }

    fn assert_same_roots(found: &[Complex64], expected: &[Complex64], tol: f64) {
        assert_eq!(found.len(), expected.len());
        for e in expected {
            let best = found.iter().map(|f| (f - e).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < tol, "root {e} missing from {found:?}");
        }
    }

    #[test]
    fn low_degree() {
        assert!(poly_roots(&[c(3.0, 0.0)]).unwrap().is_empty());
        assert_same_roots(&poly_roots(&[c(-2.0, 0.0), c(1.0, 0.0)]).unwrap(), &[c(2.0, 0.0)], 1e-15);
        assert_same_roots(
            &poly_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap(),
            &[c(0.0, 1.0), c(0.0, -1.0)],
            1e-14,
        );
    }

    #[test]
    fn recovers_expanded_roots() {
        let roots = [c(1.0, 2.0), c(-0.5, 0.1), c(3.0, -1.0), c(0.0, 0.0), c(-2.0, -2.0)];
        assert_same_roots(&poly_roots(&expand(&roots)).unwrap(), &roots, 1e-10);
    }

    #[test]
    fn companion_alone_agrees() {
        let roots = [c(1.0, 0.0), c(2.0, 0.0), c(-1.0, 1.0)];
        let p = expand(&roots);
        assert_same_roots(&companion(&p).unwrap(), &roots, 1e-10);
    }

    #[test]
    fn ignores_trailing_zero_leading_terms() {
        let p = [c(-4.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert_same_roots(&poly_roots(&p).unwrap(), &[c(2.0, 0.0), c(-2.0, 0.0)], 1e-14);
    }
}
