//! Reconstruction of the antiderivative as an algebroid function: branch
//! integrals from a base germ, their elementary symmetric functions, and a
//! rational fit of each.

mod build;
mod family;
mod fit;
mod symmetric;

pub use build::{
    branch_integrals_at, build_antiderivative, default_grid, verify_antiderivative, AntiderivativeModel,
    BranchRouter, BuildOptions, FitDiagnostics,
};
pub use family::constant_family;
pub use fit::{fit_rational, RationalFit};
pub use symmetric::symmetric_coeffs;
