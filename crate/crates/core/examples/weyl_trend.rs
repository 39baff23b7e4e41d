//! Ratio of λ_k^(1/(2t)) to the leading Weyl term on the unit disk.

use polyharmonic::verify::{check_weyl, weyl_ratios, SpectrumCache};

fn main() {
    let cache = SpectrumCache::new();
    for (m, t, kk) in [(1, 1, 500), (2, 2, 200)] {
        match weyl_ratios(&cache, 2, m, t, kk) {
            Ok(r) => {
                println!("m={m} t={t}");
                let mut k = 1;
                while k <= kk as usize {
                    println!("  k={k:>4}  r_k = {:.6}", r[k - 1]);
                    k *= 2;
                }
                for rep in check_weyl(&cache, 2, m, t, kk) {
                    println!("  {}: {:.4} vs {:.4} {}", rep.check, rep.lhs, rep.rhs, rep.verdict);
                }
            }
            Err(e) => eprintln!("m={m} t={t}: {e}"),
        }
    }
}
