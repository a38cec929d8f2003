//! The defining equation, its critical set, fibers and monodromy.

mod critical;
mod equation;
mod fiber;
mod monodromy;

pub use critical::{CriticalKind, CriticalPoint, CriticalSet};
pub use equation::{DefiningEquation, PsiEval};
pub use fiber::{fiber_at, Fiber};
pub(crate) use fiber::min_separation;
pub use monodromy::{
    irreducibility_check, monodromy, monodromy_generators, orbits, Generator, Irreducibility, SheetPermutation,
};

pub fn critical_points(eq: &DefiningEquation) -> CriticalSet {
    eq.critical_set().clone()
}
