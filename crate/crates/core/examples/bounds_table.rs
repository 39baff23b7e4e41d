//! Closed-form bounds for λ_1 of (-Δ)^m on the unit ball, in log space, and
//! the bracket of the remainder after the two-term expansion.

use polyharmonic::bounds::{ball_bounds, log_gap, remainder_bracket};

fn main() -> polyharmonic::Result<()> {
    for d in 1..=3 {
        println!("d = {d}");
        println!("{:>3} {:>12} {:>12} {:>10} {:>10} {:>9} {:>9}", "m", "ln lower", "ln upper", "norm lo", "norm hi", "R lo", "R hi");
        for m in [1, 2, 4, 6, 10, 14] {
            let b = ball_bounds(d, m, 0)?;
            let (lo, hi) = remainder_bracket(m, d)?;
            println!(
                "{m:>3} {:>12.6} {:>12.6} {:>10.5} {:>10.5} {lo:>9.5} {hi:>9.5}",
                b.lower.ln_mag, b.upper.ln_mag, b.normalized_lower, b.normalized_upper
            );
        }
        let target = f64::from(d) / 2.0 * std::f64::consts::LN_2;
        println!("ln(upper/lower) at m=14: {:.5} (limit {target:.5})\n", log_gap(14, d)?);
    }
    Ok(())
}
