//! Clamped plate and clamped beam: the secular determinant against the
//! Galerkin oracle and the closed-form sandwich.

use polyharmonic::ball::{assemble_spectrum_auto, ProblemSpec};
use polyharmonic::bounds::{dirichlet_lower, dirichlet_upper};
use polyharmonic::galerkin::{clamped_beam_reference, interval_forms, radial_forms};

fn main() -> polyharmonic::Result<()> {
    let beam = clamped_beam_reference()?;
    let secular = assemble_spectrum_auto(ProblemSpec::new(1, 2, 2)?, 1)?.entries[0].lambda;
    let ritz = interval_forms(2, 2, 12)?.ritz_values(1)?[0];
    println!("beam   β⁴ = {:.12}  secular = {:.12}  ritz = {:.12}", beam.lambda, secular, ritz);

    let plate = assemble_spectrum_auto(ProblemSpec::new(2, 2, 2)?, 1)?.entries[0].lambda;
    let ritz = radial_forms(2, 2, 0, 2, 14)?.ritz_values(1)?[0];
    println!("plate  secular = {plate:.12}  ritz = {ritz:.12}");

    for d in 1..=2 {
        let lo = dirichlet_lower(2, d)?.to_f64();
        let hi = dirichlet_upper(2, d)?.to_f64();
        println!("d={d}    {lo:.4} <= λ_1 <= {hi:.4}");
    }
    Ok(())
}
