//! Reconstruct the algebraic equation satisfied by the antiderivative.

use algebroid::antideriv::{build_antiderivative, verify_antiderivative, BuildOptions};
use algebroid::surface::DefiningEquation;
use algebroid::tracker::SurfacePoint;
use algebroid::Tolerances;
use num_complex::Complex64;

fn main() -> Result<(), algebroid::Error> {
    let tol = Tolerances::default();
    let one = Complex64::new(1.0, 0.0);

    // W^2 = z: the antiderivative (2/3) z^(3/2) satisfies M^2 - (4/9) z^3 = 0
    let eq = DefiningEquation::parse(&["0", "-z"])?;
    let base = SurfacePoint::new(&eq, one, one, &tol)?;
    let model = build_antiderivative(&eq, &base, Complex64::new(2.0 / 3.0, 0.0), &BuildOptions::default(), &tol)?;
    println!("M^2 + ({}) M + ({}) = 0", model.coeffs[0], model.coeffs[1]);
    println!(
        "fit residuals {:?}, verification defect {:.1e}, model irreducible: {:?}",
        model.diagnostics.residuals, model.diagnostics.verification_defect, model.diagnostics.model_irreducible
    );

    let probes = [Complex64::new(-2.0, 0.5), Complex64::new(0.3, -1.2)];
    println!("defect at fresh probes: {:.1e}", verify_antiderivative(&model, &eq, &probes, &tol)?);

    // shifting the constant of integration again
    let shifted = model.family(Complex64::new(1.0, 0.0));
    let shown: Vec<String> = shifted.iter().map(|b| b.to_string()).collect();
    println!("shifted by 1: [{}]", shown.join(", "));

    // a cubic: W^3 = z^2 has antiderivative (3/5) z^(5/3)
    let eq = DefiningEquation::parse(&["0", "0", "-z^2"])?;
    let base = SurfacePoint::new(&eq, one, one, &tol)?;
    let model = build_antiderivative(&eq, &base, Complex64::new(0.6, 0.0), &BuildOptions::default(), &tol)?;
    let shown: Vec<String> = model.coeffs.iter().map(|b| b.to_string()).collect();
    println!("W^3 = z^2: [{}]", shown.join(", "));
    Ok(())
}
