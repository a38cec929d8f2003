//! Integrals of `w dz` along lifted paths, residue checks and path audits.

use std::f64::consts::PI;

use algebroid::quad::{closed_loop_integral, path_independence_audit, residue_theorem_check, surface_integral};
use algebroid::surface::DefiningEquation;
use algebroid::tracker::{loop_path, BasePath, Segment, SurfacePoint};
use algebroid::Tolerances;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> Result<(), algebroid::Error> {
    let tol = Tolerances::default();
    let sqrt = DefiningEquation::parse(&["0", "-z"])?;
    let base = SurfacePoint::new(&sqrt, c(1.0, 0.0), c(1.0, 0.0), &tol)?;

    let r = surface_integral(&sqrt, &base, &BasePath::line(c(1.0, 0.0), c(4.0, 0.0)), &tol)?;
    println!("∫ sqrt z dz from 1 to 4 = {:.12} (14/3 = {:.12})", r.value, 14.0 / 3.0);

    // twice around the branch point the lift closes and the integral vanishes
    let twice = loop_path(c(0.0, 0.0), 1.0, 2, c(1.0, 0.0));
    println!("two turns around 0: {:.2e}", closed_loop_integral(&sqrt, &base, &twice, &tol)?.value.norm());

    for (name, coeffs) in [("W^2 = z", &["0", "-z"][..]), ("W = 1/z", &["-1/z"][..])] {
        for check in residue_theorem_check(&DefiningEquation::parse(coeffs)?, c(0.0, 0.0), None, &tol)? {
            println!("{name}: loop {:.10}, 2πi·residue {:.10}", check.loop_value, check.expected);
        }
    }

    let via = |p: Complex64| BasePath::new(vec![Segment::line(c(1.0, 0.0), p), Segment::line(p, c(4.0, 0.0))]);
    let target = SurfacePoint::new(&sqrt, c(4.0, 0.0), c(2.0, 0.0), &tol)?;
    let paths = [BasePath::line(c(1.0, 0.0), c(4.0, 0.0)), via(c(2.5, 2.0))?, via(c(2.5, -2.0))?];
    let audit = path_independence_audit(&sqrt, &base, &target, &paths, &tol)?;
    println!("sqrt z, three paths: {:?} (max discrepancy {:.1e})", audit.verdict, audit.max_discrepancy);

    let recip = DefiningEquation::parse(&["-1/z"])?;
    let start = SurfacePoint::new(&recip, c(1.0, 0.0), c(1.0, 0.0), &tol)?;
    let end = SurfacePoint::new(&recip, c(-1.0, 0.0), c(-1.0, 0.0), &tol)?;
    let halves = [
        BasePath::new(vec![Segment::arc(c(0.0, 0.0), 1.0, 0.0, PI)])?,
        BasePath::new(vec![Segment::arc(c(0.0, 0.0), 1.0, 0.0, -PI)])?,
    ];
    let audit = path_independence_audit(&recip, &start, &end, &halves, &tol)?;
    println!("1/z, upper vs lower: {:?}, period {:.10}", audit.verdict, audit.pairs[0].period);
    Ok(())
}
