//! In one dimension λ_(k+1)^(1,1) <= λ_k^(2,1) holds with equality for odd k
//! and fails for even k; on the disk it holds throughout.

use polyharmonic::verify::{explore_shift_conjecture, SpectrumCache};

fn main() {
    let cache = SpectrumCache::new();
    for d in [1, 2] {
        println!("d = {d}");
        for r in explore_shift_conjecture(&cache, d, 1, 1, 8) {
            println!(
                "  k={:<2} λ_(k+1)^(1,1) = {:>12.6}  λ_k^(2,1) = {:>12.6}  {}",
                r.params.k.unwrap_or(0),
                r.lhs,
                r.rhs,
                r.verdict
            );
        }
    }
}
