use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GaussianRational, Poly};
use crate::error::{Error, Result};

/// Reduced rational function `num / den` in `z`.
///
/// `den` is monic and coprime to `num`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lc_inv = den.leading().and_then(GaussianRational::inv).expect("den nonzero");
        Ok(RatFunc {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn z() -> Self {
        RatFunc::from_poly(Poly::z())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `max(deg num, deg den)`, with the zero function counted as degree 0.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self) -> RatFunc {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(num, &self.den * &self.den).expect("den nonzero")
    }

    pub fn eval(&self, z: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(z) / &d)
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        super::poly::horner(&self.num.to_c64(), z) / super::poly::horner(&self.den.to_c64(), z)
    }

    /// Order of vanishing at `z0`: multiplicity in `num` minus multiplicity
    /// in `den` (negative at a pole).
    pub fn laurent_order(&self, z0: &GaussianRational) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(self.num.multiplicity_at(z0)? as i64 - self.den.multiplicity_at(z0)? as i64)
    }
}

/// The four exact field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfunc_arith(lhs: &RatFunc, rhs: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    match op {
        ArithOp::Add => Ok(lhs + rhs),
        ArithOp::Sub => Ok(lhs - rhs),
        ArithOp::Mul => Ok(lhs * rhs),
        ArithOp::Div => lhs.checked_div(rhs),
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("den nonzero");
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("den nonzero")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("den nonzero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

fn single_term(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        if single_term(&self.num) {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if single_term(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Serialized as its expression string.
impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_coefficient(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_coefficient;

    fn rf(s: &str) -> RatFunc {
        parse_coefficient(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert!(ratfunc_arith(&rf("1/z"), &rf("-1/z"), ArithOp::Add).unwrap().is_zero());
        assert_eq!(ratfunc_arith(&rf("z"), &rf("1/z"), ArithOp::Mul).unwrap(), RatFunc::one());
        assert_eq!(
            ratfunc_arith(&rf("z^2-1"), &rf("z-1"), ArithOp::Div).unwrap(),
            rf("z+1")
        );
        assert_eq!(
            ratfunc_arith(&rf("z"), &RatFunc::zero(), ArithOp::Div),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn reduced_and_monic() {
        let r = rf("(2*z+2)/(4*z^2-4)");
        assert_eq!(r.den(), rf("z-1").num());
        assert_eq!(r.num(), &Poly::constant(GaussianRational::from_ratio(1, 2)));
    }

    #[test]
    fn laurent_orders() {
        let zero = GaussianRational::zero();
        assert_eq!(rf("-1/z").laurent_order(&zero), Ok(-1));
        assert_eq!(rf("z^3").laurent_order(&zero), Ok(3));
        assert_eq!(rf("(z-1)/z^2").laurent_order(&zero), Ok(-2));
        assert_eq!(RatFunc::zero().laurent_order(&zero), Err(Error::ZeroFunction));
    }

    #[test]
    fn derivative_quotient_rule() {
        assert_eq!(rf("1/z").derivative(), rf("-1/z^2"));
        assert_eq!(rf("z^3 - 2*z").derivative(), rf("3*z^2 - 2"));
    }

    #[test]
    fn display_round_trips() {
        for s in ["-1/z", "(z - 1)/z^2", "-(4/9)*z^3", "(i*z + 1)/(z^2 + 1)", "(1/2+i)*z"] {
            let r = rf(s);
            assert_eq!(rf(&r.to_string()), r, "{s} -> {r}");
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn gq() -> impl Strategy<Value = GaussianRational> {
        (-5i64..=5, 1i64..=4, -5i64..=5).prop_map(|(a, d, b)| GaussianRational::from_parts((a, d), (b, 1)))
    }

    fn poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(gq(), 1..4).prop_map(Poly::new)
    }

    fn ratfunc() -> impl Strategy<Value = RatFunc> {
        (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
    }

    proptest! {
        #[test]
        fn multiply_then_divide(r in ratfunc(), s in ratfunc()) {
            prop_assume!(!s.is_zero());
            prop_assert_eq!((&r * &s).checked_div(&s).unwrap(), r);
        }

        #[test]
        fn laurent_order_is_additive(r in ratfunc(), s in ratfunc(), at in 0usize..3) {
            prop_assume!(!r.is_zero() && !s.is_zero());
            let z0 = [GaussianRational::zero(), GaussianRational::one(), GaussianRational::i()][at].clone();
            let lhs = (&r * &s).laurent_order(&z0).unwrap();
            prop_assert_eq!(lhs, r.laurent_order(&z0).unwrap() + s.laurent_order(&z0).unwrap());
        }
    }
}
