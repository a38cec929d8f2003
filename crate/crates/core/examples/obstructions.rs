//! When reconstruction is refused: reducible equations, nonzero residues,
//! and a period hiding at infinity.

use std::f64::consts::TAU;

use algebroid::antideriv::{build_antiderivative, BuildOptions};
use algebroid::puiseux::{singular_elements, DEFAULT_N_MAX};
use algebroid::quad::closed_loop_integral;
use algebroid::surface::DefiningEquation;
use algebroid::tracker::{BasePath, Segment, SurfacePoint};
use algebroid::Tolerances;
use num_complex::Complex64;

fn attempt(label: &str, coeffs: &[&str], z: Complex64, w: Complex64) -> Result<(), algebroid::Error> {
    let tol = Tolerances::default();
    let eq = DefiningEquation::parse(coeffs)?;
    let base = SurfacePoint::new(&eq, z, w, &tol)?;
    match build_antiderivative(&eq, &base, Complex64::new(0.0, 0.0), &BuildOptions::default(), &tol) {
        Ok(m) => println!("{label}: built {:?}", m.coeffs.iter().map(|b| b.to_string()).collect::<Vec<_>>()),
        Err(e) => println!("{label}: {} ({e})", e.kind()),
    }
    Ok(())
}

fn main() -> Result<(), algebroid::Error> {
    let one = Complex64::new(1.0, 0.0);
    attempt("W^2 = z^2", &["0", "-z^2"], one, one)?;
    attempt("W = 1/z", &["-1/z"], one, one)?;

    // W^2 = 1 + z^2: both finite residues vanish ...
    let tol = Tolerances::default();
    let eq = DefiningEquation::parse(&["0", "-(1 + z^2)"])?;
    for a in [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
        let r = singular_elements(&eq, a, DEFAULT_N_MAX, None, &tol)?;
        println!("residue at {a}: {:.1e}", r.cycles[0].residue.norm());
    }
    // ... but w ~ z + 1/(2z) near infinity, so a big circle has period πi
    let z0 = Complex64::new(3.0, 0.0);
    let base = SurfacePoint::new(&eq, z0, Complex64::new(10f64.sqrt(), 0.0), &tol)?;
    let circle = BasePath::new(vec![Segment::arc(Complex64::new(0.0, 0.0), 3.0, 0.0, TAU)])?;
    println!("period on |z| = 3: {:.10}", closed_loop_integral(&eq, &base, &circle, &tol)?.value);
    attempt("W^2 = 1 + z^2", &["0", "-(1 + z^2)"], z0, Complex64::new(10f64.sqrt(), 0.0))?;
    Ok(())
}
