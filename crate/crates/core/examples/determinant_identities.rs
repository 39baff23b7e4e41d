//! Exact identities behind the factorisation of the boundary determinant.

use num_complex::Complex64;
use polyharmonic::ball::{det_a_factor_check, det_b_check, ProblemSpec};
use polyharmonic::ball::identities::{reduction_identity_i, reduction_identity_ii, reduction_identity_iii_residual};

fn main() -> polyharmonic::Result<()> {
    for n in 1..=6 {
        let (lu, closed) = det_b_check(n, 3);
        println!("det B, n={n}: {lu} = {closed} {}", if lu == closed { "ok" } else { "MISMATCH" });
    }
    let (a, b) = reduction_identity_i(5, 4, 2);
    println!("identity i (m=5, k=4, j=2): {}", a == b);
    let (a, b) = reduction_identity_ii(5, 4);
    println!("identity ii (m=5, k=4): {}", a == b);
    for z in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0), Complex64::new(0.0, 5.0)] {
        println!("identity iii residual at z={z}: {:.2e}", reduction_identity_iii_residual(4, 3, 2, z)?);
    }
    let spec = ProblemSpec::new(3, 4, 2)?;
    for rho in [1.0, 2.5, 7.0] {
        println!("det A factorisation residual, ρ={rho}: {:.2e}", det_a_factor_check(spec, 2, rho)?);
    }
    Ok(())
}
