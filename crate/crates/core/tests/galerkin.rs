use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use polyharmonic::ball::{eigenvalues_for_ell, ProblemSpec, ScanConfig};
use polyharmonic::galerkin::*;
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Monomial coefficients of `(1-x²)^m x^j`.
fn bump(m: u32, j: u32) -> Vec<BigRational> {
    let mut c = vec![q(1)];
    for _ in 0..m {
        let mut n = vec![BigRational::zero(); c.len() + 2];
        for (i, a) in c.iter().enumerate() {
            n[i] += a;
            n[i + 2] -= a;
        }
        c = n;
    }
    let mut out = vec![BigRational::zero(); j as usize];
    out.extend(c);
    out
}

fn deriv(c: &[BigRational], p: u32) -> Vec<BigRational> {
    let mut c = c.to_vec();
    for _ in 0..p {
        c = (1..c.len()).map(|i| &c[i] * q(i as i64)).collect();
    }
    c
}

fn integral(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            if (i + j) % 2 == 0 {
                s += a * b * BigRational::new(BigInt::from(2), BigInt::from((i + j + 1) as i64));
            }
        }
    }
    s
}

#[test]
fn interval_forms_match_direct_integration() {
    for m in 1..=3 {
        let basis = GalerkinBasis::interval(m, 6).unwrap();
        let forms = basis.forms_up_to(m).unwrap();
        for p in 0..=m {
            for i in 0..6 {
                for j in 0..6 {
                    let want = integral(&deriv(&bump(m, i), p), &deriv(&bump(m, j), p));
                    assert_eq!(forms[p as usize].get(i as usize, j as usize), &want, "m={m} p={p} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn ritz_values_decrease_with_basis_size() {
    for (m, t) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let mut prev = f64::INFINITY;
        for n in 2..=12 {
            let v = interval_forms(m, t, n).unwrap().ritz_values(1).unwrap()[0];
            assert!(v <= prev * (1.0 + 1e-13), "m={m} t={t} n={n}");
            prev = v;
        }
    }
}

#[test]
fn ritz_values_bound_the_secular_roots() {
    let cfg = ScanConfig::with_rho_max(20.0);
    for (d, m, t, ell) in [(2, 2, 2, 0), (2, 2, 2, 1), (3, 2, 1, 0), (2, 3, 3, 0)] {
        let exact = eigenvalues_for_ell(ProblemSpec::new(d, m, t).unwrap(), ell, &cfg).unwrap();
        let ritz = radial_forms(m, t, ell, d, 8).unwrap().ritz_values(2).unwrap();
        for (r, e) in ritz.iter().zip(&exact) {
            assert!(*r >= e * (1.0 - 1e-12), "d={d} m={m} t={t} ℓ={ell}");
        }
        assert!((ritz[0] / exact[0] - 1.0).abs() < 1e-6);
    }
}

#[test]
fn beam_matches_interval_oracle() {
    let beam = clamped_beam_reference().unwrap();
    assert!((beam.beta - 2.365_020_372_4).abs() < 1e-9);
    let v = interval_forms(2, 2, 14).unwrap().ritz_values(1).unwrap()[0];
    assert!((v / beam.lambda - 1.0).abs() < 1e-8);
    assert!((24.0..=31.5).contains(&v));
}

#[test]
fn box_square_laplacian() {
    // (-1,1)²: λ_1 = π²/2
    let v = box_forms(1, 1, &[1.0, 1.0], 6).unwrap().ritz_values(1).unwrap()[0];
    let e = std::f64::consts::PI.powi(2) / 2.0;
    assert!(v >= e && v / e - 1.0 < 1e-6);
}

#[test]
fn basis_limits() {
    assert!(GalerkinBasis::interval(0, 4).is_err());
    assert!(GalerkinBasis::interval(2, polyharmonic::galerkin::basis::MAX_INTERVAL_BASIS + 1).is_err());
    assert!(GalerkinBasis::radial(2, 2, 1, 4).is_err());
    assert!(GalerkinBasis::hyperrectangle(1, &[1.0, -1.0], 3).is_err());
    assert!(interval_forms(2, 3, 4).is_err());
}

#[test]
fn seeded_vectors_are_reproducible() {
    let a = Lcg::new(GN_SEED).vector(9);
    let b = Lcg::new(GN_SEED).vector(9);
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn interpolation_inequality(coef in prop::collection::vec(-9i64..=9, 6), t in 0u32..=3, s in 0u32..=3) {
        prop_assume!(coef.iter().any(|&c| c != 0) && t <= s);
        let basis = GalerkinBasis::interval(3, 6).unwrap();
        let forms = basis.forms_up_to(3).unwrap();
        let u: Vec<BigRational> = coef.into_iter().map(q).collect();
        prop_assert!(gn_margin(&forms, 3, &u, t, s).unwrap() >= -1e-12);
    }

    #[test]
    fn log_convex_chain(coef in prop::collection::vec(-9i64..=9, 5), p in 1usize..=2) {
        prop_assume!(coef.iter().any(|&c| c != 0));
        let basis = GalerkinBasis::radial(3, 1, 2, 5).unwrap();
        let forms = basis.forms_up_to(3).unwrap();
        let u: Vec<BigRational> = coef.into_iter().map(q).collect();
        prop_assert!(cauchy_schwarz_holds(&forms, &u, p));
    }

    #[test]
    fn ldl_reconstructs(coef in prop::collection::vec(-5i64..=5, 16)) {
        // A = M Mᵀ + I is positive definite
        let m = RationalMatrix::from_fn(4, |i, j| q(coef[4 * i + j]));
        let a = RationalMatrix::from_fn(4, |i, j| {
            (0..4).fold(if i == j { q(1) } else { q(0) }, |s, k| s + m.get(i, k) * m.get(j, k))
        });
        let (l, dvec) = a.ldl().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let v = (0..4).fold(BigRational::zero(), |s, k| s + l.get(i, k) * &dvec[k] * l.get(j, k));
                prop_assert_eq!(&v, a.get(i, j));
            }
        }
    }
}
