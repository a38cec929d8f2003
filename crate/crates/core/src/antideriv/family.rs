use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactalg::{GaussianRational, RatFunc};

fn binomial(n: usize, r: usize) -> BigInt {
    (0..r).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Coefficients of the equation whose roots are those of
/// `M^k + Σ B_j M^(k-j) = 0` shifted by `c`:
/// `B^c_j = Σ_{i=0..j} (-c)^i C(k-j+i, i) B_{j-i}`, with `B_0 = 1`.
pub fn constant_family(coeffs: &[RatFunc], c: &GaussianRational) -> Vec<RatFunc> {
    let k = coeffs.len();
    let b = |j: usize| if j == 0 { RatFunc::one() } else { coeffs[j - 1].clone() };
    let minus_c = -c;
    (1..=k)
        .map(|j| {
            (0..=j).fold(RatFunc::zero(), |acc, i| {
                let weight = minus_c.pow(i as u32)
                    * GaussianRational::new(BigRational::from_integer(binomial(k - j + i, i)), BigRational::from_integer(0.into()));
                acc + b(j - i).scale(&weight)
            })
        })
        .collect()
}
