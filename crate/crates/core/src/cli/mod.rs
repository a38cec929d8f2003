//! Command-line front end: problem files in, JSON reports out.
//!
//! Every subcommand prints exactly one [`CommandReport`]; the process exit
//! code is 0 iff the report carries no error.

mod problem;
mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

pub use problem::{Germ, ProblemFile};
pub use report::{to_json, CommandReport, ErrorReport};

use crate::antideriv::{build_antiderivative, BuildOptions};
use crate::error::Error;
use crate::puiseux::{singular_elements, DEFAULT_N_MAX};
use crate::quad::{path_independence_audit, residue_theorem_check, surface_integral};
use crate::surface::{fiber_at, irreducibility_check, monodromy, monodromy_generators, DefiningEquation};
use crate::tolerances::Tolerances;
use crate::tracker::{continue_branch, BasePath, BranchSample, SurfacePoint};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("file not found: {0}")]
    FileNotFound(String),
    #[error("invalid problem file: {0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::FileNotFound(_) => "FileNotFound",
            CliError::Schema(_) => "SchemaError",
            CliError::Usage(_) => "UsageError",
            CliError::Io { .. } => "IoError",
            CliError::Domain(e) => e.kind(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::FileNotFound(_) => 3,
            CliError::Schema(_) => 4,
            CliError::Io { .. } => 5,
            CliError::Domain(e) => e.exit_code(),
        }
    }
}

/// `re,im` or a bare real number.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got {s:?}")),
    }
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "algebroid", version, about = "Integrals and antiderivatives of algebroid functions")]
pub struct Cli {
    /// Override a tolerance, e.g. `--tol quad_abs=1e-13` (repeatable).
    #[arg(long = "tol", value_name = "NAME=VALUE", global = true)]
    pub tol: Vec<String>,
    /// Write the tracked branch as CSV (`t,re_z,im_z,re_w,im_w`).
    #[arg(long, value_name = "PATH", global = true)]
    pub plot_data: Option<PathBuf>,
    /// Recorded in the report; all algorithms are deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Pretty-print the report with this many spaces per level.
    #[arg(long, value_name = "N", global = true)]
    pub json_indent: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Discriminant and critical points.
    Critical { problem: PathBuf },
    /// The fiber over a point (default: the base point).
    Fiber {
        problem: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Option<Complex64>,
    },
    /// Sheet permutation of a named loop, or generators and irreducibility
    /// at the base point when no loop is given.
    Monodromy {
        problem: PathBuf,
        #[arg(long)]
        path: Option<String>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        base: Option<Complex64>,
    },
    /// Cycles, Puiseux expansions and residues at a point.
    Puiseux {
        problem: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        point: Complex64,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Residues at every critical point (or one), checked against contour integrals.
    Residues {
        problem: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        point: Option<Complex64>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// `∫ w dz` along a named path, starting from the base germ or `--start-w`
    /// at the path's start.
    Integrate {
        problem: PathBuf,
        #[arg(long, required_unless_present = "path_json", conflicts_with = "path_json")]
        path: Option<String>,
        /// An inline path: `[{"line": [[1, 0], [4, 0]]}, ...]`.
        #[arg(long)]
        path_json: Option<String>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        start_w: Option<Complex64>,
    },
    /// Compare integrals along several paths from the base germ to a target germ.
    Audit {
        problem: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        paths: Vec<String>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        target_w: Complex64,
        /// Defaults to the end of the first path.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        target_z: Option<Complex64>,
        /// Overrides the base germ's `w` (the base point stays the problem's).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        base_w: Option<Complex64>,
    },
    /// Reconstruct the antiderivative equation from the base germ.
    Antiderivative {
        problem: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
        c: Complex64,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Reconstruct, then shift the antiderivative by a further constant.
    Family {
        problem: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
        c: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        shift: Complex64,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Critical { .. } => "critical",
            Command::Fiber { .. } => "fiber",
            Command::Monodromy { .. } => "monodromy",
            Command::Puiseux { .. } => "puiseux",
            Command::Residues { .. } => "residues",
            Command::Integrate { .. } => "integrate",
            Command::Audit { .. } => "audit",
            Command::Antiderivative { .. } => "antiderivative",
            Command::Family { .. } => "family",
        }
    }

    fn problem(&self) -> &Path {
        match self {
            Command::Critical { problem }
            | Command::Fiber { problem, .. }
            | Command::Monodromy { problem, .. }
            | Command::Puiseux { problem, .. }
            | Command::Residues { problem, .. }
            | Command::Integrate { problem, .. }
            | Command::Audit { problem, .. }
            | Command::Antiderivative { problem, .. }
            | Command::Family { problem, .. } => problem,
        }
    }
}

/// Tolerances with every `name=value` override applied.
pub fn tolerances_from(overrides: &[String]) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    for o in overrides {
        let (name, value) = o
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--tol expects NAME=VALUE, got {o:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--tol {name}: not a number: {value:?}")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(CliError::Usage(format!("--tol {name}: must be positive and finite")));
        }
        if !tol.set(name.trim(), value) {
            return Err(CliError::Usage(format!("unknown tolerance {name:?}")));
        }
    }
    Ok(tol)
}

struct Ctx {
    problem: ProblemFile,
    eq: DefiningEquation,
    tol: Tolerances,
    warnings: Vec<String>,
    track: Option<Vec<BranchSample>>,
}

impl Ctx {
    fn base(&self) -> Result<SurfacePoint, CliError> {
        let g = self
            .problem
            .base
            .ok_or_else(|| CliError::Schema("this command needs a `base` germ in the problem file".into()))?;
        Ok(SurfacePoint::new(&self.eq, g.z, g.w, &self.tol)?)
    }

    fn base_z(&self) -> Option<Complex64> {
        self.problem.base.map(|g| g.z)
    }
}

fn dispatch(cmd: &Command, cx: &mut Ctx) -> Result<Value, CliError> {
    let tol = cx.tol;
    let eq = cx.eq.clone();
    let v = match cmd {
        Command::Critical { .. } => json!({
            "discriminant": eq.discriminant(),
            "critical_points": eq.critical_set().points,
        }),
        Command::Fiber { z, .. } => {
            let z = z.or(cx.base_z()).ok_or_else(|| CliError::Usage("fiber needs --z or a base germ".into()))?;
            serde_json::to_value(fiber_at(&eq, z, &tol)?).expect("serializable")
        }
        Command::Monodromy { path: Some(name), .. } => {
            let loop_ = cx.problem.path(name)?.clone();
            let perm = monodromy(&eq, &loop_, &tol)?;
            if let Some(z0) = loop_.start() {
                cx.track = Some(continue_branch(&eq, &SurfacePoint::on_sheet(&eq, z0, 0, &tol)?, &loop_, &tol)?.samples);
            }
            json!({ "path": name, "permutation": perm, "cycles": perm.cycles() })
        }
        Command::Monodromy { path: None, base, .. } => {
            let z = base
                .or(cx.base_z())
                .ok_or_else(|| CliError::Usage("monodromy needs --path, --base or a base germ".into()))?;
            let gens = monodromy_generators(&eq, z, &tol)?;
            json!({
                "base": z,
                "generators": gens,
                "irreducibility": irreducibility_check(&eq, z, &tol)?,
            })
        }
        Command::Puiseux { point, n_max, epsilon, .. } => {
            serde_json::to_value(singular_elements(&eq, *point, *n_max, *epsilon, &tol)?).expect("serializable")
        }
        Command::Residues { point, epsilon, .. } => {
            let points: Vec<Complex64> = match point {
                Some(p) => vec![*p],
                None => eq.critical_set().locations().collect(),
            };
            let mut checks = Vec::new();
            for a in points {
                for c in residue_theorem_check(&eq, a, *epsilon, &tol)? {
                    if c.discrepancy > tol.residue * (1.0 + c.expected.norm()) {
                        cx.warnings.push(format!(
                            "contour integral at {} disagrees with 2πi·residue by {:e}",
                            c.center, c.discrepancy
                        ));
                    }
                    checks.push(c);
                }
            }
            json!({ "checks": checks })
        }
        Command::Integrate { path, path_json, start_w, .. } => {
            let p = match (path, path_json) {
                (Some(name), _) => cx.problem.path(name)?.clone(),
                (None, Some(text)) => {
                    let p: BasePath = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--path-json: {e}")))?;
                    BasePath::new(p.segments().to_vec())?
                }
                (None, None) => return Err(CliError::Usage("integrate needs --path or --path-json".into())),
            };
            let start = match (start_w, p.start()) {
                (Some(w), Some(z0)) => SurfacePoint::new(&eq, z0, *w, &tol)?,
                _ => cx.base()?,
            };
            let r = surface_integral(&eq, &start, &p, &tol)?;
            if !p.is_empty() {
                cx.track = Some(continue_branch(&eq, &start, &p, &tol)?.samples);
            }
            serde_json::to_value(r).expect("serializable")
        }
        Command::Audit {
            paths,
            target_w,
            target_z,
            base_w,
            ..
        } => {
            let base = match base_w {
                Some(w) => SurfacePoint::new(&eq, cx.base()?.z, *w, &tol)?,
                None => cx.base()?,
            };
            let ps: Vec<BasePath> = paths
                .iter()
                .map(|n| cx.problem.path(n).cloned())
                .collect::<Result<_, _>>()?;
            let end = target_z
                .or_else(|| ps.first().and_then(BasePath::end))
                .ok_or_else(|| CliError::Usage("audit needs --target-z or a non-empty first path".into()))?;
            let target = SurfacePoint::new(&eq, end, *target_w, &tol)?;
            let report = path_independence_audit(&eq, &base, &target, &ps, &tol)?;
            json!({ "paths": paths, "audit": report })
        }
        Command::Antiderivative { c, degree_bound, .. } => {
            let model = build_antiderivative(&eq, &cx.base()?, *c, &build_options(*degree_bound), &tol)?;
            serde_json::to_value(model).expect("serializable")
        }
        Command::Family { c, shift, degree_bound, .. } => {
            let model = build_antiderivative(&eq, &cx.base()?, *c, &build_options(*degree_bound), &tol)?;
            json!({
                "constant": model.constant + shift,
                "shift": shift,
                "coefficients": model.family(*shift),
                "original": model.coeffs,
            })
        }
    };
    Ok(v)
}

fn build_options(degree_bound: Option<usize>) -> BuildOptions {
    BuildOptions {
        degree_bound: degree_bound.map(|d| (d, d)),
        ..BuildOptions::default()
    }
}

fn write_plot(path: &Path, samples: &[BranchSample]) -> Result<(), CliError> {
    let mut csv = String::from("t,re_z,im_z,re_w,im_w\n");
    for s in samples {
        writeln!(csv, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", s.t, s.z.re, s.z.im, s.w.re, s.w.im)
            .expect("writing to a String");
    }
    std::fs::write(path, csv).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Run a parsed command line and produce its report.
pub fn execute(cli: &Cli) -> CommandReport {
    let started = Instant::now();
    let mut warnings = Vec::new();
    let mut inputs = json!({ "arguments": cli });
    let results = (|| -> Result<Value, CliError> {
        let tol = tolerances_from(&cli.tol)?;
        inputs["tolerances"] = serde_json::to_value(tol).expect("serializable");
        let problem = ProblemFile::load(cli.command.problem())?;
        inputs["problem"] = serde_json::to_value(&problem).expect("serializable");
        let eq = problem.equation()?;
        let mut cx = Ctx {
            problem,
            eq,
            tol,
            warnings: Vec::new(),
            track: None,
        };
        let out = dispatch(&cli.command, &mut cx);
        warnings.append(&mut cx.warnings);
        let out = out?;
        if let Some(path) = &cli.plot_data {
            match &cx.track {
                Some(samples) => write_plot(path, samples)?,
                None => warnings.push(format!("`{}` tracks no path; --plot-data ignored", cli.command.name())),
            }
        }
        Ok(out)
    })();
    let (results, error) = match results {
        Ok(v) => (v, None),
        Err(e) => (
            Value::Null,
            Some(ErrorReport {
                kind: e.kind().to_string(),
                message: e.to_string(),
                exit_code: e.exit_code(),
            }),
        ),
    };
    CommandReport {
        command: cli.command.name().to_string(),
        inputs,
        results,
        warnings,
        timing: cli.timing.then(|| started.elapsed().as_secs_f64()),
        error,
    }
}

/// Parse `args`, run, print the report to stdout and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = execute(&cli);
    println!("{}", to_json(&report, cli.json_indent));
    report.error.as_ref().map_or(0, |e| e.exit_code)
}
