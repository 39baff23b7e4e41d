//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every line is printed; the process fails if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use polyharmonic::ball::identities::{reduction_identity_i, reduction_identity_ii, reduction_identity_iii_residual};
use polyharmonic::ball::{assemble_spectrum_auto, det_a_factor_check, det_b_check, ProblemSpec};
use polyharmonic::bounds::exact::grad_t_norm_ball_exact;
use polyharmonic::bounds::{hyperrectangle_lower, log_gap, remainder_bracket};
use polyharmonic::galerkin::{
    box_forms, cauchy_schwarz_violation, clamped_beam_reference, gn_margin, interval_forms, radial_forms,
    GalerkinBasis, Lcg, GN_SEED,
};
use polyharmonic::specfun::ln_gamma;
use polyharmonic::verify::{run_suite, CheckReport, Suite, SuiteParams, Verdict};

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn lambdas(d: u32, m: u32, t: u32, count: u64) -> Vec<f64> {
    let spec = ProblemSpec::new(d, m, t).expect("valid problem");
    assemble_spectrum_auto(spec, count).expect("spectrum").values()
}

fn c01() -> Outcome {
    let v = lambdas(1, 1, 1, 6);
    let worst = (1..=6)
        .map(|k| rel(v[k - 1], (k as f64 * PI / 2.0).powi(2)))
        .fold(0.0, f64::max);
    if worst <= 1e-10 {
        Ok(format!("max rel err {worst:.1e}"))
    } else {
        Err(format!("max rel err {worst:.1e} > 1e-10"))
    }
}

fn c02() -> Outcome {
    let beam = clamped_beam_reference().map_err(|e| e.to_string())?.lambda;
    let secular = lambdas(1, 2, 2, 1)[0];
    let ritz = interval_forms(2, 2, 16).and_then(|f| f.ritz_values(1)).map_err(|e| e.to_string())?[0];
    let (e1, e2) = (rel(secular, beam), rel(ritz, beam));
    let inside = (24.0..=31.5).contains(&secular) && (24.0..=31.5).contains(&ritz);
    let msg = format!("β⁴ = {beam:.12}, secular err {e1:.1e}, Galerkin err {e2:.1e}");
    if e1 <= 1e-8 && e2 <= 1e-8 && inside {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c03() -> Outcome {
    let secular = lambdas(2, 2, 2, 1)[0];
    let ritz = radial_forms(2, 2, 0, 2, 16).and_then(|f| f.ritz_values(1)).map_err(|e| e.to_string())?[0];
    let e = rel(secular, ritz);
    let msg = format!("λ₁ = {secular:.10}, Galerkin {ritz:.10}, rel diff {e:.1e}");
    if (64.0..=320.0 / 3.0).contains(&secular) && e <= 1e-6 && (secular - 104.36).abs() < 0.01 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c04() -> Outcome {
    for n in 1..=8 {
        for ell in 0..=10 {
            let (lu, closed) = det_b_check(n, ell);
            if lu != closed {
                return Err(format!("n={n}, ℓ={ell}: {lu} != {closed}"));
            }
        }
    }
    Ok("88 determinants exact".into())
}

fn c05() -> Outcome {
    let mut worst = 0.0f64;
    for d in 1..=3 {
        for m in 1..=5 {
            for t in 1..=m {
                let spec = ProblemSpec::new(d, m, t).map_err(|e| e.to_string())?;
                for ell in 0..=3 {
                    for rho in [1.0, 2.5, 7.0] {
                        let r = det_a_factor_check(spec, ell, rho).map_err(|e| e.to_string())?;
                        worst = worst.max(r);
                    }
                }
            }
        }
    }
    if worst <= 1e-8 {
        Ok(format!("max residual {worst:.1e}"))
    } else {
        Err(format!("max residual {worst:.1e} > 1e-8"))
    }
}

fn c06() -> Outcome {
    for m in 1..=8 {
        for k in 0..=10 {
            for j in 1..=m {
                let (a, b) = reduction_identity_i(m, k, j);
                if a != b {
                    return Err(format!("identity i fails at m={m}, k={k}, j={j}"));
                }
            }
            let (a, b) = reduction_identity_ii(m, k);
            if a != b {
                return Err(format!("identity ii fails at m={m}, k={k}"));
            }
        }
    }
    let mut worst = 0.0f64;
    for z in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0), Complex64::new(0.0, 5.0)] {
        for m in 1..=8 {
            for k in 0..=10 {
                for d in 1..=3 {
                    worst = worst.max(reduction_identity_iii_residual(m, k, d, z).map_err(|e| e.to_string())?);
                }
            }
        }
    }
    if worst <= 1e-9 {
        Ok(format!("i, ii exact; iii max residual {worst:.1e}"))
    } else {
        Err(format!("iii residual {worst:.1e} > 1e-9"))
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `∫_B |∇^t (1-|x|²)^m|² / |S^(d-1)|` by direct radial calculus: even `t`
/// integrates `(Δ^(t/2) f)²`, odd `t` integrates `|∂_r Δ^((t-1)/2) f|²`.
fn grad_norm_oracle(m: u32, t: u32, d: u32) -> BigRational {
    // coefficients of r^(2i)
    let mut g: Vec<BigRational> = (0..=m)
        .map(|i| {
            let c = num_integer::binomial(i64::from(m), i64::from(i));
            rat(if i % 2 == 0 { c } else { -c })
        })
        .collect();
    for _ in 0..t / 2 {
        g = (1..g.len())
            .map(|i| &g[i] * rat(2 * i as i64 * (2 * i as i64 + i64::from(d) - 2)))
            .collect();
    }
    // odd t: g' = Σ 2i g_i r^(2i-1), reindexed from i = 1
    let (f, extra): (Vec<BigRational>, i64) = if t % 2 == 0 {
        (g, 0)
    } else {
        ((1..g.len()).map(|i| &g[i] * rat(2 * i as i64)).collect(), 2)
    };
    let mut total = BigRational::zero();
    for (i, a) in f.iter().enumerate() {
        for (j, b) in f.iter().enumerate() {
            total += a * b / rat(2 * (i + j) as i64 + i64::from(d) + extra);
        }
    }
    total
}

fn c07() -> Outcome {
    let mut worst = 0.0f64;
    for d in 1..=4 {
        let sphere = 2.0 * (0.5 * f64::from(d) * PI.ln() - ln_gamma(0.5 * f64::from(d)).map_err(|e| e.to_string())?).exp();
        for m in 1..=8 {
            for t in 0..=m {
                let want = grad_norm_oracle(m, t, d).to_f64().unwrap_or(f64::NAN) * sphere;
                let got = grad_t_norm_ball_exact(m, t, d).map_err(|e| e.to_string())?.to_f64();
                worst = worst.max(rel(got, want));
            }
        }
    }
    if worst <= 1e-12 {
        Ok(format!("max rel err {worst:.1e}"))
    } else {
        Err(format!("max rel err {worst:.1e} > 1e-12"))
    }
}

fn summary(r: &[CheckReport]) -> String {
    let pass = r.iter().filter(|x| x.verdict == Verdict::Pass).count();
    let eq = r.iter().filter(|x| x.verdict == Verdict::EqualityWithinTol).count();
    format!("{} checks: {pass} pass, {eq} equality-within-tol", r.len())
}

fn c08() -> Outcome {
    let p = SuiteParams::default();
    let mut r = run_suite(Suite::ThmE, &p);
    r.extend(run_suite(Suite::Payne, &p));
    if let Some(bad) = r.iter().find(|x| !x.ok()) {
        return Err(format!("{} {:?}: {} vs {} ({})", bad.check, bad.params, bad.lhs, bad.rhs, bad.verdict));
    }
    let eq = |d: u32| {
        r.iter().any(|x| {
            x.check == "payne-shift"
                && x.params.d == Some(d)
                && x.params.m == Some(1)
                && x.params.t == Some(1)
                && x.verdict == Verdict::EqualityWithinTol
        })
    };
    if eq(1) && eq(2) {
        Ok(summary(&r))
    } else {
        Err("interval/disk equality cases not detected".into())
    }
}

fn c09() -> Outcome {
    let a = lambdas(1, 1, 1, 8);
    let b = lambdas(1, 2, 1, 7);
    let gap = a[2] - b[1];
    let odd = [1usize, 3, 5, 7].iter().map(|&k| rel(a[k], b[k - 1])).fold(0.0, f64::max);
    let msg = format!("λ₃^(1,1) - λ₂^(2,1) = {gap:.4}, odd-k equality err {odd:.1e}");
    if gap > 0.0 && (gap - 2.0).abs() < 0.05 && odd <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c10() -> Outcome {
    let v = lambdas(2, 1, 1, 500);
    let dev = |lo: usize, hi: usize| {
        (lo..=hi)
            .map(|k| (v[k - 1] / (4.0 * k as f64) - 1.0).abs())
            .fold(0.0, f64::max)
    };
    let (tail, head) = (dev(250, 500), dev(1, 50));
    let msg = format!("max |λ_k/4k - 1|: [250,500] {tail:.4}, [1,50] {head:.4}");
    if tail < head && tail < 0.2 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c11() -> Outcome {
    let mut problems = Vec::new();
    for d in 1..=3 {
        for m in 6..=14 {
            let (lo, hi) = remainder_bracket(m, d).map_err(|e| e.to_string())?;
            if !(lo >= 0.0 && hi <= 2.0) {
                problems.push(format!("d={d} m={m}: bracket [{lo:.4}, {hi:.4}]"));
            }
        }
    }
    let mut gaps = Vec::new();
    for d in 1..=3 {
        let target = f64::from(d) / 2.0 * std::f64::consts::LN_2;
        let g = log_gap(14, d).map_err(|e| e.to_string())?;
        let off = g / target - 1.0;
        gaps.push(format!("d={d} {:+.1}%", 100.0 * off));
        if off.abs() > 0.05 {
            problems.push(format!("d={d}: ln(upper/lower) = {g:.5} vs {target:.5} ({:+.1}%)", 100.0 * off));
        }
    }
    if problems.is_empty() {
        Ok(format!("brackets in [0, 2]; gaps at m=14: {}", gaps.join(", ")))
    } else {
        Err(problems.join("; "))
    }
}

fn c12() -> Outcome {
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for m in 1..=4 {
        let basis = GalerkinBasis::interval(m, 8).map_err(|e| e.to_string())?;
        let forms = basis.forms_up_to(m).map_err(|e| e.to_string())?;
        let mut rng = Lcg::new(GN_SEED);
        for _ in 0..200 {
            let u = rng.vector(basis.len());
            for s in 0..=m {
                for t in 0..=s {
                    worst = worst.min(gn_margin(&forms, m, &u, t, s).map_err(|e| e.to_string())?);
                    count += 1;
                }
            }
        }
        for b in [basis, GalerkinBasis::radial(m, 1, 2, 6).map_err(|e| e.to_string())?] {
            if let Some((j, p)) = cauchy_schwarz_violation(&b).map_err(|e| e.to_string())? {
                return Err(format!("chain fails for basis vector {j}, p={p}, m={m}"));
            }
        }
    }
    if worst >= -1e-12 {
        Ok(format!("{count} inequalities, min margin {worst:.2e}; chain exact"))
    } else {
        Err(format!("min margin {worst:.2e} < -1e-12"))
    }
}

fn c13() -> Outcome {
    let mut out = Vec::new();
    for sides in [[1.0, 1.0], [1.0, 2.0]] {
        for m in 1..=3 {
            let n = if m == 3 { 6 } else { 8 };
            let ritz = box_forms(m, m, &sides, n).and_then(|f| f.ritz_values(1)).map_err(|e| e.to_string())?[0];
            let lower = hyperrectangle_lower(m, &sides).map_err(|e| e.to_string())?.to_f64();
            if ritz < lower {
                return Err(format!("sides {sides:?}, m={m}: Ritz {ritz} below bound {lower}"));
            }
            out.push(format!("{:.3}/{:.3}", ritz, lower));
        }
    }
    let lap = box_forms(1, 1, &[1.0, 1.0], 8).and_then(|f| f.ritz_values(1)).map_err(|e| e.to_string())?[0];
    let e = rel(lap, PI * PI / 2.0);
    if e <= 1e-6 {
        Ok(format!("Ritz/bound {}; Laplacian err {e:.1e}", out.join(" ")))
    } else {
        Err(format!("Laplacian err {e:.1e}"))
    }
}

fn c14() -> Outcome {
    let run = |threads: &str| {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = polyharmonic::cli::run(
            ["polyharmonic", "verify", "--suite", "all", "--format", "json", "--threads", threads],
            &mut out,
            &mut err,
        );
        (code, out)
    };
    let (c1, a) = run("1");
    let (c2, b) = run("4");
    if c1 != 0 || c2 != 0 {
        return Err(format!("exit codes {c1}, {c2}"));
    }
    if a == b && !a.is_empty() {
        Ok(format!("{} bytes identical across 1 and 4 threads", a.len()))
    } else {
        Err("reports differ".into())
    }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome, u64); 14] = [
        (1, c01, 1),
        (2, c02, 5),
        (3, c03, 10),
        (4, c04, 1),
        (5, c05, 30),
        (6, c06, 5),
        (7, c07, 10),
        (8, c08, 120),
        (9, c09, 1),
        (10, c10, 30),
        (11, c11, 5),
        (12, c12, 30),
        (13, c13, 60),
        (14, c14, 600),
    ];
    let mut failed = 0;
    for (n, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(limit);
        let (ok, detail) = match outcome {
            Ok(s) if !slow => (true, s),
            Ok(s) => (false, format!("{s}; took longer than {limit} s")),
            Err(s) => (false, s),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {n:>2}: {} ({:.2} s) {detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    println!("{} of 14 criteria pass", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
