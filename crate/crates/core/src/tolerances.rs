use serde::{Deserialize, Serialize};

/// Numeric thresholds shared by every numeric operation.
///
/// All relative tolerances are scaled by the quantity named in the field
/// comment. The defaults are the values the acceptance suite is pinned to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Root residual, relative to the natural scale of `Ψ(w, z)`.
    pub root: f64,
    /// Critical points closer than this (relative to `1 + |z|`) are merged.
    pub cluster: f64,
    /// Minimal fiber separation, relative to `1 + max |w|`.
    pub separation: f64,
    /// Margin a path keeps from critical points; `None` means
    /// `1e-3 * scale` of the critical set.
    pub path_margin: Option<f64>,
    /// Smallest adaptive step, as a fraction of a segment.
    pub step_min: f64,
    /// Absolute part of the adaptive quadrature tolerance.
    pub quad_abs: f64,
    /// Relative part of the adaptive quadrature tolerance.
    pub quad_rel: f64,
    /// Puiseux coefficients below this (relative to the largest) are zero.
    pub coeff: f64,
    /// Two-radius agreement of Puiseux coefficients.
    pub consistency: f64,
    /// A residue below this magnitude counts as zero.
    pub residue: f64,
    /// Path-independence verdict threshold.
    pub audit: f64,
    /// Relative residual accepted by rational fitting.
    pub fit: f64,
    /// Single-valuedness defect accepted by the antiderivative builder.
    pub single_valued: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root: 1e-12,
            cluster: 1e-8,
            separation: 1e-8,
            path_margin: None,
            step_min: 1e-10,
            quad_abs: 1e-11,
            quad_rel: 1e-11,
            coeff: 1e-9,
            consistency: 1e-8,
            residue: 1e-8,
            audit: 1e-8,
            fit: 1e-8,
            single_valued: 1e-6,
        }
    }
}

impl Tolerances {
    /// Override one field by name. Returns `false` for an unknown name.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        match name {
            "root" => self.root = value,
            "cluster" => self.cluster = value,
            "separation" => self.separation = value,
            "path_margin" => self.path_margin = Some(value),
            "step_min" => self.step_min = value,
            "quad_abs" => self.quad_abs = value,
            "quad_rel" => self.quad_rel = value,
            "coeff" => self.coeff = value,
            "consistency" => self.consistency = value,
            "residue" => self.residue = value,
            "audit" => self.audit = value,
            "fit" => self.fit = value,
            "single_valued" => self.single_valued = value,
            _ => return false,
        }
        true
    }
}
