use num_complex::Complex64;

use super::critical::{compute_critical_set, CriticalSet};
use crate::error::{Error, Result};
use crate::exactalg::{derivative_w, parse_coefficient, resultant_w, GaussianRational, RatFunc};
use crate::exactalg::horner;

/// Float copies of one coefficient and its derivative, for fast evaluation.
#[derive(Debug, Clone)]
struct NumericCoeff {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
    dnum: Vec<Complex64>,
    dden: Vec<Complex64>,
}

impl NumericCoeff {
    fn new(rf: &RatFunc) -> Self {
        NumericCoeff {
            num: rf.num().to_c64(),
            den: rf.den().to_c64(),
            dnum: rf.num().derivative().to_c64(),
            dden: rf.den().derivative().to_c64(),
        }
    }

    fn value_and_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let n = horner(&self.num, z);
        let d = horner(&self.den, z);
        let dn = horner(&self.dnum, z);
        let dd = horner(&self.dden, z);
        (n / d, (dn * d - n * dd) / (d * d))
    }
}

/// `Ψ` and its partials at one point.
#[derive(Debug, Clone, Copy)]
pub struct PsiEval {
    pub value: Complex64,
    pub dw: Complex64,
    pub dz: Complex64,
    /// `|w|^k + Σ |A_j(z)| |w|^(k-j)`, the natural size of the terms of `Ψ`.
    pub scale: f64,
}

/// `W^k + A_1(z) W^(k-1) + ... + A_k(z) = 0` with rational `A_j`.
///
/// Construction validates the equation, computes its discriminant exactly
/// and locates the critical set once.
#[derive(Debug, Clone)]
pub struct DefiningEquation {
    coeffs: Vec<RatFunc>,
    discriminant: RatFunc,
    critical: CriticalSet,
    numeric: Vec<NumericCoeff>,
}

impl DefiningEquation {
    /// `coeffs` are `A_1, ..., A_k`.
    pub fn new(coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidEquation("sheet count k must be at least 1".into()));
        }
        let psi = psi_in_w(&coeffs);
        let discriminant = resultant_w(&psi, &derivative_w(&psi))?;
        if discriminant.is_zero() {
            return Err(Error::IdenticallyZeroDiscriminant);
        }
        let critical = compute_critical_set(&discriminant, &coeffs)?;
        let numeric = coeffs.iter().map(NumericCoeff::new).collect();
        Ok(DefiningEquation {
            coeffs,
            discriminant,
            critical,
            numeric,
        })
    }

    /// Parse `A_1, ..., A_k` from coefficient expressions.
    pub fn parse<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|s| parse_coefficient(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        DefiningEquation::new(parsed)
    }

    /// Sheet count.
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// `R(Ψ, Ψ_W)` as a reduced rational function.
    pub fn discriminant(&self) -> &RatFunc {
        &self.discriminant
    }

    pub fn critical_set(&self) -> &CriticalSet {
        &self.critical
    }

    /// Largest numerator/denominator degree among the coefficients.
    pub fn max_coeff_degree(&self) -> usize {
        self.coeffs.iter().map(RatFunc::degree).max().unwrap_or(0)
    }

    /// The equation of `αW`: `A_j ↦ α^j A_j`.
    pub fn scaled(&self, alpha: &GaussianRational) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a.scale(&alpha.pow(j as u32 + 1)))
            .collect();
        DefiningEquation::new(coeffs)
    }

    /// Ascending coefficients of `Ψ(·, z)` in `W` (monic, length `k + 1`).
    pub fn w_coeffs_at(&self, z: Complex64) -> Vec<Complex64> {
        let k = self.k();
        let mut out = vec![Complex64::new(0.0, 0.0); k + 1];
        out[k] = Complex64::new(1.0, 0.0);
        for (j, c) in self.numeric.iter().enumerate() {
            out[k - 1 - j] = horner(&c.num, z) / horner(&c.den, z);
        }
        out
    }

    pub fn eval(&self, w: Complex64, z: Complex64) -> PsiEval {
        let k = self.k();
        // Horner in w over the descending list 1, A_1, ..., A_k
        let mut value = Complex64::new(1.0, 0.0);
        let mut dw = Complex64::new(0.0, 0.0);
        let mut dz = Complex64::new(0.0, 0.0);
        let r = w.norm();
        let mut scale = 1.0;
        for c in &self.numeric {
            let (a, da) = c.value_and_derivative(z);
            dw = dw * w + value;
            value = value * w + a;
            dz = dz * w + da;
            scale = scale * r + a.norm();
        }
        debug_assert_eq!(self.numeric.len(), k);
        PsiEval {
            value,
            dw,
            dz,
            scale,
        }
    }

    /// `dw/dz = -Ψ_z / Ψ_W` along a branch.
    pub fn dwdz(&self, w: Complex64, z: Complex64) -> Complex64 {
        let e = self.eval(w, z);
        -e.dz / e.dw
    }

    /// Newton on `Ψ(·, z) = 0` from `w0`. Returns the root when the final
    /// residual is below `root_tol` times the natural scale.
    pub fn newton(&self, w0: Complex64, z: Complex64, root_tol: f64, max_iter: usize) -> Option<Complex64> {
        let mut w = w0;
        for _ in 0..max_iter {
            let e = self.eval(w, z);
            if e.value.norm() <= 0.25 * f64::EPSILON * e.scale {
                break;
            }
            if e.dw.norm() == 0.0 {
                return None;
            }
            let step = e.value / e.dw;
            w -= step;
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            if step.norm() <= 2.0 * f64::EPSILON * (1.0 + w.norm()) {
                break;
            }
        }
        let e = self.eval(w, z);
        (e.value.norm() <= root_tol * e.scale).then_some(w)
    }
}

/// `Ψ` as a polynomial in `W`, ascending: `[A_k, ..., A_1, 1]`.
pub(crate) fn psi_in_w(coeffs: &[RatFunc]) -> Vec<RatFunc> {
    let mut out: Vec<RatFunc> = coeffs.iter().rev().cloned().collect();
    out.push(RatFunc::one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        assert_eq!(eq.discriminant(), &parse_coefficient("-4*z").unwrap());
        let eq = DefiningEquation::parse(&["0", "-(1+z^2)"]).unwrap();
        assert_eq!(eq.discriminant(), &parse_coefficient("-4*(1+z^2)").unwrap());
    }

    #[test]
    fn repeated_root_rejected() {
        // (W - z)^2
        assert_eq!(
            DefiningEquation::parse(&["-2*z", "z^2"]).unwrap_err(),
            Error::IdenticallyZeroDiscriminant
        );
        assert!(matches!(
            DefiningEquation::new(vec![]),
            Err(Error::InvalidEquation(_))
        ));
    }

    #[test]
    fn psi_partials_match_finite_differences() {
        let eq = DefiningEquation::parse(&["z/(z-2)", "-(1+z^2)", "i*z"]).unwrap();
        let (w, z) = (Complex64::new(0.3, -0.7), Complex64::new(0.9, 0.4));
        let e = eq.eval(w, z);
        let h = 1e-6;
        let fw = (eq.eval(w + h, z).value - eq.eval(w - h, z).value) / (2.0 * h);
        let fz = (eq.eval(w, z + h).value - eq.eval(w, z - h).value) / (2.0 * h);
        assert!((fw - e.dw).norm() < 1e-8);
        assert!((fz - e.dz).norm() < 1e-8);
        // direct value
        let direct = w * w * w + z / (z - 2.0) * w * w - (1.0 + z * z) * w + Complex64::i() * z;
        assert!((direct - e.value).norm() < 1e-14);
    }

    #[test]
    fn scaling_substitution() {
        let eq = DefiningEquation::parse(&["0", "-z"]).unwrap();
        let s = eq.scaled(&GaussianRational::from_integer(3)).unwrap();
        assert_eq!(s.coeffs()[1], parse_coefficient("-9*z").unwrap());
    }
}
