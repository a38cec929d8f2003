//! Every example runs to completion and prints its headline result.

use std::path::PathBuf;
use std::process::Command;

fn run_example(name: &str) -> String {
    // `cargo test` builds examples next to the test binaries; fall back to
    // `cargo run` when this target was selected on its own
    let built = std::env::current_exe()
        .ok()
        .and_then(|exe| Some(exe.parent()?.parent()?.join("examples").join(name)))
        .filter(|p| p.exists());
    let out = match built {
        Some(path) => Command::new(path).output(),
        None => Command::new(env!("CARGO"))
            .args(["run", "-q", "--example", name])
            .current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")))
            .output(),
    }
    .expect("example starts");
    assert!(out.status.success(), "{name} failed:\n{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn critical_points() {
    let out = run_example("critical_points");
    assert!(out.contains("discriminant: 27*z^2 - 108"), "{out}");
}

#[test]
fn monodromy() {
    let out = run_example("monodromy");
    assert!(out.contains("irreducibility: Transitive"), "{out}");
    assert!(out.contains("w = -1.000000"), "{out}");
}

#[test]
fn puiseux() {
    let out = run_example("puiseux");
    assert!(out.contains("m=2 u=Some(1) AlgebraicElement"), "{out}");
    assert!(out.contains("growth bound of W^2 = 1/z^3 at 0: 2"), "{out}");
}

#[test]
fn integrals() {
    let out = run_example("integrals");
    assert!(out.contains("three paths: Independent"), "{out}");
    assert!(out.contains("upper vs lower: Dependent"), "{out}");
}

#[test]
fn antiderivative() {
    let out = run_example("antiderivative");
    assert!(out.contains("M^2 + (0) M + (-(4/9)*z^3) = 0"), "{out}");
    assert!(out.contains("W^3 = z^2: [0, 0, -(27/125)*z^5]"), "{out}");
}

#[test]
fn obstructions() {
    let out = run_example("obstructions");
    for kind in ["RefusedReducible", "RefusedNonzeroResidue", "SingleValuednessViolation"] {
        assert!(out.contains(kind), "{kind} missing:\n{out}");
    }
}

#[test]
fn report() {
    let out = run_example("report");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["value"][0].as_f64().unwrap() - 14.0 / 3.0).abs() < 1e-10);
}
