//! Numerical toolkit for k-valued algebroid functions
//! `W^k + A_1(z) W^(k-1) + ... + A_k(z) = 0` with rational coefficients.

pub mod antideriv;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod puiseux;
pub mod quad;
pub mod roots;
pub mod surface;
pub mod tolerances;
pub mod tracker;

pub use error::{Error, Result};
pub use tolerances::Tolerances;
