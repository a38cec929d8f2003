//! Exact arithmetic over the Gaussian rationals: polynomials and reduced
//! rational functions in `z`, the coefficient grammar, and resultants in `W`.

mod gaussian;
mod parse;
pub(crate) mod poly;
mod ratfunc;
mod resultant;

pub use gaussian::GaussianRational;
pub use parse::parse_coefficient;
pub use poly::{horner, horner_with_derivative, Poly};
pub use ratfunc::{ratfunc_arith, ArithOp, RatFunc};
pub use resultant::{bareiss_det, derivative_w, resultant_w, PolyW};
