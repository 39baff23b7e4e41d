//! Individual checks on ball spectra, bounds and Galerkin values.

use rayon::prelude::*;

use super::cache::SpectrumCache;
use super::report::{CheckReport, Params};
use crate::ball::{scan_ell, ProblemSpec, ScanConfig};
use crate::bounds::{
    dirichlet_lower, dirichlet_upper, exact::ball_volume, hyperrectangle_lower, log_gap,
    product_lower_and_bessel_upper, product_lower_direct, remainder_bracket,
    upper_mt, weyl_leading,
};
use crate::galerkin::{box_forms, radial_forms};
use crate::specfun::Z_MAX;

/// Tolerance of the secular/Galerkin cross-check.
pub const ORACLE_RTOL: f64 = 1e-6;

/// Radial basis size used by [`check_oracle_agreement`].
pub const ORACLE_BASIS: u32 = 16;

/// Deviations below this are treated as exact zeros.
const DEVIATION_FLOOR: f64 = 1e-12;

type Lambda = std::result::Result<f64, String>;

fn spec(d: u32, m: u32, t: u32) -> std::result::Result<ProblemSpec, String> {
    ProblemSpec::new(d, m, t).map_err(|e| e.to_string())
}

fn lam(cache: &SpectrumCache, d: u32, m: u32, t: u32, k: u64) -> Lambda {
    cache.lambda(spec(d, m, t)?, k)
}

fn ineq(check: &str, p: Params, lhs: Lambda, rhs: Lambda) -> CheckReport {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => CheckReport::inequality(check, p, l, r),
        (Err(e), _) | (_, Err(e)) => CheckReport::skipped(check, p, e),
    }
}

/// Spectra needed by [`check_thm_e`].
pub fn thm_e_needs(d: u32, m_max: u32, t_max: u32, k_max: u64) -> Vec<(ProblemSpec, u64)> {
    let mut out = Vec::new();
    for m in 1..=m_max + 1 {
        for t in 1..=m.min(t_max + 1) {
            if let Ok(s) = ProblemSpec::new(d, m, t) {
                out.push((s, k_max));
            }
        }
    }
    out
}

/// Monotonicity in `(m, t)`: the `increasing`, `sameorder` and `upperthm`
/// chains for `m <= m_max`, `t <= min(m, t_max)`, `k <= k_max`.
pub fn check_thm_e(cache: &SpectrumCache, d: u32, m_max: u32, t_max: u32, k_max: u64) -> Vec<CheckReport> {
    cache.prefetch(&thm_e_needs(d, m_max, t_max, k_max));
    let root = |x: Lambda, t: u32| x.map(|v| v.powf(1.0 / f64::from(t)));
    let mut out = Vec::new();
    for m in 1..=m_max {
        for t in 1..=m.min(t_max) {
            for k in 1..=k_max {
                let p = Params::dmt(d, m, t).with_k(k);
                let here = lam(cache, d, m, t, k);
                out.push(ineq(
                    "thmE-increasing",
                    p,
                    root(here.clone(), t),
                    root(lam(cache, d, m + 1, t + 1, k), t + 1),
                ));
                out.push(ineq("thmE-sameorder", p, here.clone(), lam(cache, d, m + 1, t, k)));
                for s in t + 1..=m {
                    out.push(ineq(
                        "thmE-upperthm",
                        p.with_s(s),
                        root(lam(cache, d, m, s, k), s),
                        root(here.clone(), t),
                    ));
                }
            }
        }
    }
    out
}

/// `∏_{h=m-t+1}^{m-1} λ_1^(h,1)(B)` from Bessel zeros.
fn lower_order_product(m: u32, t: u32, d: u32) -> Lambda {
    if t == 1 {
        return Ok(1.0);
    }
    product_lower_direct(m - 1, t - 1, d)
        .map(|v| v.to_f64())
        .map_err(|e| e.to_string())
}

/// `λ_k^(m,1) ∏_{h=m-t+1}^{m-1} λ_1^(h,1) <= λ_k^(m,t)`.
pub fn check_payne_lower(cache: &SpectrumCache, d: u32, m: u32, t: u32, k: u64) -> CheckReport {
    let lhs = lam(cache, d, m, 1, k).and_then(|a| Ok(a * lower_order_product(m, t, d)?));
    ineq("payne-lower", Params::dmt(d, m, t).with_k(k), lhs, lam(cache, d, m, t, k))
}

/// `λ_2^(m,t) <= λ_1^(m+1,t)`.
pub fn check_payne_shift(cache: &SpectrumCache, d: u32, m: u32, t: u32) -> CheckReport {
    ineq(
        "payne-shift",
        Params::dmt(d, m, t),
        lam(cache, d, m, t, 2),
        lam(cache, d, m + 1, t, 1),
    )
}

/// `λ_(k+1)^(m,t)` against `λ_k^(m+1,t)` for `k <= K`. Failures are data.
pub fn explore_shift_conjecture(cache: &SpectrumCache, d: u32, m: u32, t: u32, kk: u64) -> Vec<CheckReport> {
    if let (Ok(a), Ok(b)) = (spec(d, m, t), spec(d, m + 1, t)) {
        cache.prefetch(&[(a, kk + 1), (b, kk)]);
    }
    (1..=kk)
        .map(|k| {
            ineq(
                "shift-conjecture",
                Params::dmt(d, m, t).with_k(k),
                lam(cache, d, m, t, k + 1),
                lam(cache, d, m + 1, t, k),
            )
            .exploratory()
        })
        .collect()
}

/// Largest allowed `K` of [`check_weyl`].
pub const WEYL_MAX_K: u64 = 600;

/// Weyl ratios `r_k = λ_k^(1/(2t)) / (2π (k/ω_d²)^(1/d))` on the unit ball.
pub fn weyl_ratios(cache: &SpectrumCache, d: u32, m: u32, t: u32, kk: u64) -> std::result::Result<Vec<f64>, String> {
    let s = spec(d, m, t)?;
    let sp = cache.get(s, kk);
    let sp = sp.as_ref().as_ref().map_err(|e| e.to_string())?;
    let vals = sp.values();
    if (vals.len() as u64) < kk {
        return Err(format!("only {} eigenvalues of {s} available", vals.len()));
    }
    let vol = ball_volume(d).to_f64();
    (1..=kk)
        .map(|k| {
            let w = weyl_leading(k, d, vol).map_err(|e| e.to_string())?;
            Ok(vals[k as usize - 1].powf(1.0 / (2.0 * f64::from(t))) / w)
        })
        .collect()
}

fn max_deviation(r: &[f64]) -> f64 {
    let dev = r.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max);
    if dev < DEVIATION_FLOOR {
        0.0
    } else {
        dev
    }
}

/// Trend of `max |r_k - 1|`: the window `[K/2, K]` against `[1, K/10]`, and
/// the trailing deviation against 0.2.
pub fn check_weyl(cache: &SpectrumCache, d: u32, m: u32, t: u32, kk: u64) -> Vec<CheckReport> {
    let p = Params::dmt(d, m, t).with_k(kk);
    if !(2..=WEYL_MAX_K).contains(&kk) {
        let why = format!("need 2 <= K <= {WEYL_MAX_K}, got {kk}");
        return vec![
            CheckReport::skipped("weyl-trend", p, why.clone()),
            CheckReport::skipped("weyl-trailing", p, why),
        ];
    }
    match weyl_ratios(cache, d, m, t, kk) {
        Ok(r) => {
            let lead = max_deviation(&r[..(kk / 10).max(1) as usize]);
            let trail = max_deviation(&r[(kk / 2) as usize - 1..]);
            vec![
                CheckReport::inequality("weyl-trend", p, trail, lead),
                CheckReport::inequality("weyl-trailing", p, trail, 0.2),
            ]
        }
        Err(e) => vec![
            CheckReport::skipped("weyl-trend", p, e.clone()),
            CheckReport::skipped("weyl-trailing", p, e),
        ],
    }
}

fn bound(v: crate::Result<crate::bounds::LogValue>) -> Lambda {
    v.map(|x| x.to_f64()).map_err(|e| e.to_string())
}

/// First-eigenvalue sandwiches on the ball for each `m` in `ms`: the
/// Dirichlet bounds, `λ_1^(m-h) <= λ_1^(m,m-h) <= upper_mt(m,h)`, and the
/// Bessel-zero product bounds of `λ_1^(m,t)`.
pub fn check_sandwiches(cache: &SpectrumCache, d: u32, ms: &[u32]) -> Vec<CheckReport> {
    let needs: Vec<_> = ms
        .iter()
        .flat_map(|&m| (1..=m).filter_map(move |t| ProblemSpec::new(d, m, t).ok()))
        .map(|s| (s, 1))
        .collect();
    cache.prefetch(&needs);
    let mut out = Vec::new();
    for &m in ms {
        let top = lam(cache, d, m, m, 1);
        let p = Params::dmt(d, m, m);
        out.push(ineq("sandwich-dirichlet-lower", p, bound(dirichlet_lower(m, d)), top.clone()));
        out.push(ineq("sandwich-dirichlet-upper", p, top, bound(dirichlet_upper(m, d))));
        for h in 1..m {
            let t = m - h;
            let p = Params::dmt(d, m, t).with_h(h);
            let here = lam(cache, d, m, t, 1);
            out.push(ineq("sandwich-mixed-lower", p, lam(cache, d, t, t, 1), here.clone()));
            out.push(ineq("sandwich-mixed-upper", p, here, bound(upper_mt(m, h, d))));
        }
        for t in 1..=m {
            let p = Params::dmt(d, m, t);
            let here = lam(cache, d, m, t, 1);
            out.push(ineq("sandwich-product-lower", p, bound(product_lower_direct(m, t, d)), here.clone()));
            let upper = product_lower_and_bessel_upper(m, t, d).map(|b| b.upper);
            out.push(ineq("sandwich-bessel-upper", p, here, bound(upper)));
        }
    }
    out
}

/// Half-lengths of the box used by the asymptotic checks.
pub const ASYMPTOTIC_BOX: [f64; 2] = [1.0, 2.0];

/// Ritz basis size per coordinate for the box checks.
pub const ASYMPTOTIC_BOX_BASIS: u32 = 8;

/// Bracket of `λ_1^(m)(B)^(1/(2m)) - (2m/e + (d/(2e)) ln m)` from the
/// Dirichlet bounds, and the trend of `ln(upper/lower)` towards `(d/2) ln 2`.
pub fn check_two_term_asymptotics(d: u32, ms: &[u32]) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for &m in ms {
        let p = Params::dmt(d, m, m);
        match remainder_bracket(m, d) {
            Ok((lo, hi)) => {
                out.push(CheckReport::inequality("asymptotic-bracket-lower", p, 0.0, lo));
                out.push(CheckReport::inequality("asymptotic-bracket-upper", p, hi, 2.0));
            }
            Err(e) => {
                out.push(CheckReport::skipped("asymptotic-bracket-lower", p, e.to_string()));
                out.push(CheckReport::skipped("asymptotic-bracket-upper", p, e.to_string()));
            }
        }
        let target = f64::from(d) / 2.0 * std::f64::consts::LN_2;
        out.push(match log_gap(m, d) {
            Ok(g) => CheckReport::agreement("asymptotic-log-gap", p, g, target, 0.05)
                .exploratory()
                .with_note("convergence trend, 5% relative"),
            Err(e) => CheckReport::skipped("asymptotic-log-gap", p, e.to_string()).exploratory(),
        });
    }
    out
}

/// Box `(-1,1) x (-2,2)`: the Ritz value bounds `λ_1^(m)` from above, so it
/// must exceed the lower bound; and the remainder
/// `[λ_1]^(1/(2m)) - 2m/e` against the window `2 (1 + ln m)`.
pub fn check_box_asymptotics(ms: &[u32]) -> Vec<CheckReport> {
    let d = ASYMPTOTIC_BOX.len() as u32;
    ms.par_iter()
        .map(|&m| {
            let p = Params::dmt(d, m, m);
            let ritz = box_forms(m, m, &ASYMPTOTIC_BOX, ASYMPTOTIC_BOX_BASIS)
                .and_then(|f| f.ritz_values(1))
                .map(|v| v[0])
                .map_err(|e| e.to_string());
            let lower = bound(hyperrectangle_lower(m, &ASYMPTOTIC_BOX));
            let mf = f64::from(m);
            let rem = ritz
                .clone()
                .map(|l| l.powf(1.0 / (2.0 * mf)) - 2.0 * mf / std::f64::consts::E);
            vec![
                ineq("box-lower", p, lower, ritz),
                ineq("box-remainder", p, rem, Ok(2.0 * (1.0 + mf.ln())))
                    .exploratory()
                    .with_note("O(log m) window with an illustrative constant"),
            ]
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Default grid of [`check_oracle_agreement`]: `d, m <= 3`, `t <= m`,
/// `ell <= 2` (`ell <= 1` for `d = 1`).
pub fn oracle_grid() -> Vec<(u32, u32, u32, u32)> {
    let mut g = Vec::new();
    for d in 1..=3 {
        for m in 1..=3 {
            for t in 1..=m {
                for ell in 0..=if d == 1 { 1 } else { 2 } {
                    g.push((d, m, t, ell));
                }
            }
        }
    }
    g
}

/// Smallest secular root of degree `ell` against the smallest radial Ritz
/// value, at relative tolerance [`ORACLE_RTOL`].
pub fn check_oracle_agreement(grid: &[(u32, u32, u32, u32)]) -> Vec<CheckReport> {
    grid.par_iter()
        .map(|&(d, m, t, ell)| {
            let p = Params::dmt(d, m, t).with_ell(ell);
            let secular = spec(d, m, t).and_then(|s| {
                let roots = scan_ell(s, ell, &ScanConfig::with_rho_max(Z_MAX), None, 1)
                    .map_err(|e| e.to_string())?;
                roots
                    .lambdas
                    .first()
                    .copied()
                    .ok_or_else(|| format!("no root of degree {ell} below ρ = {Z_MAX}"))
            });
            let ritz = radial_forms(m, t, ell, d, ORACLE_BASIS)
                .and_then(|f| f.ritz_values(1))
                .map(|v| v[0])
                .map_err(|e| e.to_string());
            match (secular, ritz) {
                (Ok(a), Ok(b)) => CheckReport::agreement("oracle-agreement", p, a, b, ORACLE_RTOL),
                (Err(e), _) | (_, Err(e)) => CheckReport::skipped("oracle-agreement", p, e),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    #[test]
    fn thm_e_examples() {
        let c = SpectrumCache::new();
        let r = check_thm_e(&c, 2, 2, 2, 1);
        let find = |id: &str, m: u32, t: u32| {
            r.iter()
                .find(|x| x.check == id && x.params.m == Some(m) && x.params.t == Some(t))
                .unwrap()
        };
        let inc = find("thmE-increasing", 1, 1);
        assert!((inc.lhs - 5.783_185_96).abs() < 1e-6 && (inc.rhs - 10.215_81).abs() < 1e-3);
        let up = find("thmE-upperthm", 2, 1);
        assert!((up.lhs - 10.215_81).abs() < 1e-3 && (up.rhs - 14.681_970_6).abs() < 1e-6);
        assert!(r.iter().all(CheckReport::ok), "{r:#?}");
    }

    #[test]
    fn payne_examples() {
        let c = SpectrumCache::new();
        let r = check_payne_lower(&c, 2, 2, 2, 1);
        assert!((r.lhs - 84.9086).abs() < 1e-3 && (r.rhs - 104.3631).abs() < 1e-3);
        assert_eq!(r.verdict, Verdict::Pass);
        let r = check_payne_lower(&c, 1, 2, 2, 1);
        assert!((r.lhs - 24.352_273).abs() < 1e-5 && (r.rhs - 31.285_243_858_777).abs() < 1e-8);
        assert_eq!(check_payne_lower(&c, 2, 3, 1, 2).verdict, Verdict::EqualityWithinTol);
        assert_eq!(check_payne_shift(&c, 2, 1, 1).verdict, Verdict::EqualityWithinTol);
        assert_eq!(check_payne_shift(&c, 1, 1, 1).verdict, Verdict::EqualityWithinTol);
        // on the ball the shift is an equality for every (m, t)
        assert_eq!(check_payne_shift(&c, 2, 2, 2).verdict, Verdict::EqualityWithinTol);
        assert_eq!(check_payne_shift(&c, 3, 2, 1).verdict, Verdict::EqualityWithinTol);
    }

    #[test]
    fn one_dimensional_counterexample() {
        let c = SpectrumCache::new();
        let r = explore_shift_conjecture(&c, 1, 1, 1, 6);
        for x in &r {
            let k = x.params.k.unwrap();
            let want = if k % 2 == 0 { Verdict::Fail } else { Verdict::EqualityWithinTol };
            assert_eq!(x.verdict, want, "{x:?}");
            assert!(!x.is_regression_failure());
        }
        assert!((r[1].lhs - r[1].rhs - 2.0).abs() < 0.1);
        assert!(explore_shift_conjecture(&c, 2, 1, 1, 6).iter().all(CheckReport::ok));
    }

    #[test]
    fn weyl_exact_in_one_dimension() {
        let c = SpectrumCache::new();
        let r = weyl_ratios(&c, 1, 1, 1, 20).unwrap();
        assert!(r.iter().all(|x| (x - 1.0).abs() < 1e-12));
        assert!(check_weyl(&c, 1, 1, 1, 20).iter().all(CheckReport::ok));
        assert_eq!(check_weyl(&c, 1, 1, 1, 601)[0].verdict, Verdict::Skipped);
    }

    #[test]
    fn sandwich_examples() {
        let c = SpectrumCache::new();
        for d in 1..=2 {
            let r = check_sandwiches(&c, d, &[1, 2, 3]);
            assert!(r.iter().all(|x| x.ok() || x.verdict == Verdict::Skipped), "{r:#?}");
        }
        let r = check_sandwiches(&c, 2, &[2]);
        let lo = r.iter().find(|x| x.check == "sandwich-dirichlet-lower").unwrap();
        assert!((lo.lhs - 64.0).abs() < 1e-9);
        let up = r.iter().find(|x| x.check == "sandwich-dirichlet-upper").unwrap();
        assert!((up.rhs - 320.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn asymptotic_bracket() {
        let r = check_two_term_asymptotics(1, &[6, 10, 14]);
        assert!(r.iter().filter(|x| x.regression).all(CheckReport::ok), "{r:#?}");
    }

    #[test]
    fn oracle_examples() {
        let r = check_oracle_agreement(&[(2, 1, 1, 0), (1, 2, 1, 0), (3, 2, 2, 1)]);
        assert!(r.iter().all(|x| x.verdict == Verdict::Pass), "{r:#?}");
        assert!((r[0].lhs - 5.783_185_962_946_784).abs() < 1e-9);
        assert!((r[1].lhs - std::f64::consts::PI.powi(2)).abs() < 1e-9);
    }
}
