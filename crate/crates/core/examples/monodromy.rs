//! Sheet permutations of loops and the generators of the monodromy group.

use algebroid::surface::{irreducibility_check, monodromy, monodromy_generators, DefiningEquation};
use algebroid::tracker::{continue_branch, loop_path, SurfacePoint};
use algebroid::Tolerances;
use num_complex::Complex64;

fn main() -> Result<(), algebroid::Error> {
    let tol = Tolerances::default();
    let eq = DefiningEquation::parse(&["0", "0", "-z*(z - 1)"])?;
    let base = Complex64::new(0.5, 1.0);

    for g in monodromy_generators(&eq, base, &tol)? {
        println!("loop around {:.3} (radius {:.3}): {:?}", g.critical, g.radius, g.permutation.cycles());
    }
    println!("irreducibility: {:?}", irreducibility_check(&eq, base, &tol)?);

    // going around both branch points at once
    let big = loop_path(Complex64::new(0.5, 0.0), 2.0, 1, base);
    println!("around both: {:?}", monodromy(&eq, &big, &tol)?.image);

    // follow one germ of sqrt z once around the origin: it comes back negated
    let sqrt = DefiningEquation::parse(&["0", "-z"])?;
    let one = Complex64::new(1.0, 0.0);
    let start = SurfacePoint::new(&sqrt, one, one, &tol)?;
    let track = continue_branch(&sqrt, &start, &loop_path(Complex64::new(0.0, 0.0), 1.0, 1, one), &tol)?;
    println!(
        "sqrt z after one turn: w = {:.6} in {} steps",
        track.endpoint.w, track.step_count
    );
    Ok(())
}
