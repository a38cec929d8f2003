//! Puiseux expansions, cycle structure and residues at critical points.

use algebroid::puiseux::{growth_bound, singular_elements, DEFAULT_N_MAX};
use algebroid::surface::DefiningEquation;
use algebroid::Tolerances;
use num_complex::Complex64;

fn show(label: &str, coeffs: &[&str], at: Complex64) -> Result<(), algebroid::Error> {
    let tol = Tolerances::default();
    let eq = DefiningEquation::parse(coeffs)?;
    let report = singular_elements(&eq, at, DEFAULT_N_MAX, None, &tol)?;
    println!("{label} at {at}:");
    for cycle in &report.cycles {
        let e = &cycle.expansion;
        let terms: Vec<String> = e
            .coeffs
            .iter()
            .take(3)
            .map(|(n, b)| format!("({b:.4})·t^{n}/{}", e.m))
            .collect();
        println!(
            "  sheets {:?}: m={} u={:?} {:?}, residue {:.2e}\n    w ≈ {} + ...",
            cycle.sheets,
            e.m,
            e.u,
            cycle.classification,
            cycle.residue,
            terms.join(" + ")
        );
    }
    Ok(())
}

fn main() -> Result<(), algebroid::Error> {
    show("W^2 = z", &["0", "-z"], Complex64::new(0.0, 0.0))?;
    show("W = 1/z", &["-1/z"], Complex64::new(0.0, 0.0))?;
    show("W^2 = -1/z^3", &["0", "1/z^3"], Complex64::new(0.0, 0.0))?;
    show("W^2 = 1 + z^2", &["0", "-(1 + z^2)"], Complex64::new(0.0, 1.0))?;

    let eq = DefiningEquation::parse(&["0", "-1/z^3"])?;
    println!("growth bound of W^2 = 1/z^3 at 0: {}", growth_bound(&eq, Complex64::new(0.0, 0.0), &Tolerances::default())?);
    Ok(())
}
