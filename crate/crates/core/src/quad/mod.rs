//! Integrals of `w dz` along lifted paths, loop residues and path audits.

mod audit;
mod gauss;
mod integral;

pub use audit::{
    c_ab, integral_element_continuation_check, path_independence_audit, residue_theorem_check, AuditReport,
    IntegralElement, PathPair, ResidueCheck, ResidueEntry, Verdict,
};
pub(crate) use integral::integrate_fiber;
pub use integral::{closed_loop_integral, surface_integral, SurfaceIntegralResult};
