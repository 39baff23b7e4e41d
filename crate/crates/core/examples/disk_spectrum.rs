//! First eigenvalues of the Dirichlet Laplacian on the unit disk, with
//! multiplicities, compared against squared Bessel zeros.

use polyharmonic::ball::{assemble_spectrum_auto, ProblemSpec};
use polyharmonic::specfun::bessel_j_zero;

fn main() -> polyharmonic::Result<()> {
    let spec = ProblemSpec::new(2, 1, 1)?;
    let s = assemble_spectrum_auto(spec, 12)?;
    println!("{:>3} {:>20} {:>4} {:>5} {:>10}", "k", "lambda", "ell", "mult", "rel.err");
    for e in &s.entries {
        let n = s.entries.iter().filter(|x| x.ell == e.ell && x.lambda < e.lambda).count();
        let z = bessel_j_zero(f64::from(e.ell), n as u32 + 1)?;
        let err = (e.lambda - z * z).abs() / (z * z);
        println!("{:>3} {:>20.14} {:>4} {:>5} {:>10.1e}", e.ordinal, e.lambda, e.ell, e.multiplicity, err);
    }
    for w in &s.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}
