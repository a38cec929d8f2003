use super::{Poly, RatFunc};
use crate::error::{Error, Result};

/// Polynomial in `W` with rational-function coefficients, ascending in `W`.
pub type PolyW = [RatFunc];

fn degree_w(f: &PolyW) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b);
    (a * b).exact_div(&g).expect("gcd nonzero").monic()
}

/// Clear denominators: returns polynomial coefficients and the multiplier.
fn clear_denominators(f: &PolyW) -> (Vec<Poly>, Poly) {
    let l = f.iter().fold(Poly::one(), |acc, c| lcm(&acc, c.den()));
    let coeffs = f
        .iter()
        .map(|c| (c.num() * &l).exact_div(c.den()).expect("den divides lcm"))
        .collect();
    (coeffs, l)
}

/// Determinant of a square matrix of polynomials by Bareiss elimination;
/// every division is exact so no fractions appear.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Sylvester matrix of two polynomials given in ascending order.
fn sylvester(f: &[Poly], g: &[Poly]) -> Vec<Vec<Poly>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant in `W` of two polynomials over the rational-function field.
///
/// Computed as the Sylvester determinant of the denominator-cleared
/// polynomials, then divided by the multipliers' powers.
pub fn resultant_w(f: &PolyW, g: &PolyW) -> Result<RatFunc> {
    let (Some(m), Some(n)) = (degree_w(f), degree_w(g)) else {
        return Err(Error::ZeroFunction);
    };
    let (fc, lf) = clear_denominators(&f[..=m]);
    let (gc, lg) = clear_denominators(&g[..=n]);
    let det = if m == 0 {
        fc[0].pow(n as u32)
    } else if n == 0 {
        gc[0].pow(m as u32)
    } else {
        bareiss_det(sylvester(&fc, &gc))
    };
    let mult = &lf.pow(n as u32) * &lg.pow(m as u32);
    RatFunc::new(det, mult)
}

/// `∂/∂W` of a polynomial in `W`.
pub fn derivative_w(f: &PolyW) -> Vec<RatFunc> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&super::GaussianRational::from_integer(i as i64)))
        .collect()
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::exactalg::{GaussianRational, Poly};
    use proptest::prelude::*;

    fn root() -> impl Strategy<Value = RatFunc> {
        prop::collection::vec((-4i64..=4, -4i64..=4), 1..3).prop_map(|cs| {
            RatFunc::from_poly(Poly::new(cs.into_iter().map(|(a, b)| GaussianRational::from_parts((a, 1), (b, 1))).collect()))
        })
    }

    /// Ascending W-coefficients of `(W - a)(W - b)`.
    fn quadratic(a: &RatFunc, b: &RatFunc) -> Vec<RatFunc> {
        vec![a * b, -&(a + b), RatFunc::one()]
    }

    proptest! {
        #[test]
        fn shared_root_gives_zero_resultant(a in root(), b in root(), c in root()) {
            let r = resultant_w(&quadratic(&a, &b), &quadratic(&a, &c)).unwrap();
            prop_assert!(r.is_zero());
        }

        #[test]
        fn resultant_is_product_of_root_differences(a in root(), b in root(), c in root(), d in root()) {
            // Res((W-a)(W-b), (W-c)(W-d)) = (a-c)(a-d)(b-c)(b-d)
            let r = resultant_w(&quadratic(&a, &b), &quadratic(&c, &d)).unwrap();
            let expected = &(&(&a - &c) * &(&a - &d)) * &(&(&b - &c) * &(&b - &d));
            prop_assert_eq!(r, expected);
        }
    }
}
