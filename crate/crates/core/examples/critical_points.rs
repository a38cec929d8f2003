//! Discriminant, critical points and fibers of `W^3 - 3W + z = 0`.

use algebroid::surface::{fiber_at, DefiningEquation};
use algebroid::Tolerances;
use num_complex::Complex64;

fn main() -> Result<(), algebroid::Error> {
    let eq = DefiningEquation::parse(&["0", "-3", "z"])?;
    let tol = Tolerances::default();

    println!("discriminant: {}", eq.discriminant());
    for p in &eq.critical_set().points {
        println!("critical point {:>8.4} ({:?})", p.location, p.kind);
    }

    // sheets are ordered by real part, then imaginary part
    for z in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)] {
        let fiber = fiber_at(&eq, z, &tol)?;
        let roots: Vec<String> = fiber.roots.iter().map(|w| format!("{w:.6}")).collect();
        println!("fiber over {z}: [{}]  (separation {:.3})", roots.join(", "), fiber.min_separation());
    }
    Ok(())
}
