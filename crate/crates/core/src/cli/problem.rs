use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::surface::DefiningEquation;
use crate::tracker::BasePath;

/// A germ `(z, w)` as written in problem files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Germ {
    pub z: Complex64,
    pub w: Complex64,
}

/// `{"k": 2, "coefficients": ["0", "-z"], "paths": {...}, "base": {"z": [1, 0], "w": [1, 0]}}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub k: usize,
    pub coefficients: Vec<String>,
    #[serde(default)]
    pub paths: BTreeMap<String, BasePath>,
    #[serde(default)]
    pub base: Option<Germ>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<ProblemFile, CliError> {
        let p: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        if p.k != p.coefficients.len() {
            return Err(CliError::Schema(format!(
                "k = {} but {} coefficients were given",
                p.k,
                p.coefficients.len()
            )));
        }
        for (name, path) in &p.paths {
            // re-run the continuity checks that deserialization skips
            BasePath::new(path.segments().to_vec())
                .map_err(|e| CliError::Schema(format!("path {name:?}: {e}")))?;
        }
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<ProblemFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => CliError::FileNotFound(path.display().to_string()),
            _ => CliError::Schema(format!("{}: {e}", path.display())),
        })?;
        ProblemFile::from_json(&text)
    }

    pub fn equation(&self) -> Result<DefiningEquation, CliError> {
        Ok(DefiningEquation::parse(&self.coefficients)?)
    }

    pub fn path(&self, name: &str) -> Result<&BasePath, CliError> {
        self.paths
            .get(name)
            .ok_or_else(|| CliError::Schema(format!("no path named {name:?} in the problem file")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let p = ProblemFile::from_json(
            r#"{"k": 2, "coefficients": ["0", "-z"],
                "paths": {"l": [{"line": [[1, 0], [4, 0]]}]},
                "base": {"z": [1, 0], "w": [1, 0]}}"#,
        )
        .unwrap();
        assert_eq!(p.path("l").unwrap().end(), Some(Complex64::new(4.0, 0.0)));
        assert!(p.equation().is_ok());
        assert!(matches!(ProblemFile::from_json(r#"{"k": 3, "coefficients": ["0"]}"#), Err(CliError::Schema(_))));
        assert!(matches!(ProblemFile::from_json(r#"{"k": 1, "coefficients": ["0"], "extra": 1}"#), Err(CliError::Schema(_))));
        let gap = r#"{"k": 1, "coefficients": ["z"], "paths": {"g": [{"line": [[0, 0], [1, 0]]}, {"line": [[2, 0], [3, 0]]}]}}"#;
        assert!(matches!(ProblemFile::from_json(gap), Err(CliError::Schema(_))));
    }
}
