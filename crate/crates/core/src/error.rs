use num_complex::Complex64;
use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the layer that raises them; the CLI maps each one
/// to its own exit code (see [`Error::exit_code`]).
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    // exact layer
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operation undefined for the zero function")]
    ZeroFunction,
    #[error("discriminant is identically zero (repeated factor in the defining equation)")]
    IdenticallyZeroDiscriminant,
    #[error("invalid defining equation: {0}")]
    InvalidEquation(String),

    // surface / numeric layer
    #[error("polynomial root finder did not converge (degree {degree})")]
    RootFindingFailure { degree: usize },
    #[error("point {z} is within {distance:e} of critical point {critical}")]
    NearCriticalPoint {
        z: Complex64,
        critical: Complex64,
        distance: f64,
    },
    #[error("({z}, {w}) is not a regular point of the surface: {reason}")]
    NotOnSurface {
        z: Complex64,
        w: Complex64,
        reason: String,
    },

    // tracking
    #[error("path passes within {distance:e} of critical point {critical} (margin {margin:e})")]
    PathTooCloseToCritical {
        critical: Complex64,
        distance: f64,
        margin: f64,
    },
    #[error("tracked roots collided near z = {z} (separation {separation:e})")]
    TrackingCollision { z: Complex64, separation: f64 },
    #[error("adaptive step fell below the minimum near z = {z}")]
    StepUnderflow { z: Complex64 },
    #[error("path does not start at the germ's base point ({expected} vs {found})")]
    PathStartMismatch { expected: Complex64, found: Complex64 },
    #[error("malformed path: {0}")]
    InvalidPath(String),

    // puiseux
    #[error("expansion at {center} did not converge at radius {radius:e}: {reason}")]
    AnnulusTooWide {
        center: Complex64,
        radius: f64,
        reason: String,
    },

    // quadrature
    #[error("adaptive quadrature stalled on a piece of length {length:e}")]
    QuadratureStall { length: f64 },
    #[error("base loop closes but its lift moves sheet {from} to sheet {to}")]
    LiftNotClosed { from: usize, to: usize },
    #[error("path is not closed in the base plane")]
    PathNotClosed,
    #[error("path lift ends at w = {reached}, not at the target germ w = {expected}")]
    EndpointGermMismatch {
        reached: Complex64,
        expected: Complex64,
    },

    // antiderivative
    #[error("sheet {sheet} cannot be reached from the base sheet (monodromy is intransitive)")]
    UnreachableSheet { sheet: usize },
    #[error("rational fit did not reach tolerance (best residual {residual:e})")]
    FitNotConverged { residual: f64 },
    #[error("singular element at {center} has non-zero residue {residue}")]
    RefusedNonzeroResidue {
        center: Complex64,
        residue: Complex64,
    },
    #[error("defining equation is reducible (sheet orbits {orbits:?})")]
    RefusedReducible { orbits: Vec<Vec<usize>> },
    #[error("symmetric coefficients are not single-valued: loop around {loop_center} changes them by {defect:e}")]
    SingleValuednessViolation { loop_center: Complex64, defect: f64 },
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::ZeroFunction => "ZeroFunction",
            Error::IdenticallyZeroDiscriminant => "IdenticallyZeroDiscriminant",
            Error::InvalidEquation(_) => "InvalidEquation",
            Error::RootFindingFailure { .. } => "RootFindingFailure",
            Error::NearCriticalPoint { .. } => "NearCriticalPoint",
            Error::NotOnSurface { .. } => "NotOnSurface",
            Error::PathTooCloseToCritical { .. } => "PathTooCloseToCritical",
            Error::TrackingCollision { .. } => "TrackingCollision",
            Error::StepUnderflow { .. } => "StepUnderflow",
            Error::PathStartMismatch { .. } => "PathStartMismatch",
            Error::InvalidPath(_) => "InvalidPath",
            Error::AnnulusTooWide { .. } => "AnnulusTooWide",
            Error::QuadratureStall { .. } => "QuadratureStall",
            Error::LiftNotClosed { .. } => "LiftNotClosed",
            Error::PathNotClosed => "PathNotClosed",
            Error::EndpointGermMismatch { .. } => "EndpointGermMismatch",
            Error::UnreachableSheet { .. } => "UnreachableSheet",
            Error::FitNotConverged { .. } => "FitNotConverged",
            Error::RefusedNonzeroResidue { .. } => "RefusedNonzeroResidue",
            Error::RefusedReducible { .. } => "RefusedReducible",
            Error::SingleValuednessViolation { .. } => "SingleValuednessViolation",
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } => 10,
            Error::DivisionByZeroPoly => 11,
            Error::ZeroFunction => 12,
            Error::IdenticallyZeroDiscriminant => 13,
            Error::InvalidEquation(_) => 14,
            Error::RootFindingFailure { .. } => 20,
            Error::NearCriticalPoint { .. } => 21,
            Error::NotOnSurface { .. } => 22,
            Error::PathTooCloseToCritical { .. } => 30,
            Error::TrackingCollision { .. } => 31,
            Error::StepUnderflow { .. } => 32,
            Error::PathStartMismatch { .. } => 33,
            Error::InvalidPath(_) => 34,
            Error::AnnulusTooWide { .. } => 40,
            Error::QuadratureStall { .. } => 50,
            Error::LiftNotClosed { .. } => 51,
            Error::PathNotClosed => 52,
            Error::EndpointGermMismatch { .. } => 53,
            Error::UnreachableSheet { .. } => 60,
            Error::FitNotConverged { .. } => 61,
            Error::RefusedNonzeroResidue { .. } => 62,
            Error::RefusedReducible { .. } => 63,
            Error::SingleValuednessViolation { .. } => 64,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
