//! Exact identities behind the factorisation of the boundary matrix `A`:
//! the `α` recurrence, the polynomial block `B(n, ℓ)` and its determinant,
//! and a numeric check of `det A = ± det B · det L · ∏ γ_j^(m-t)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use super::matrix::{complex_det, gamma_points};
use super::problem::ProblemSpec;
use crate::error::{domain, Result};
use crate::specfun::{jtilde_deriv_series, ln_gamma, ExtComplex, ExtReal};

/// Rows `p = 1..=p_max` of the `α(p, i, k)` table; row `p` holds
/// `i = -1, 0, …, p-1` at positions `0..=p`.
pub fn alpha_table(p_max: u32, k: u32) -> Vec<Vec<BigInt>> {
    let kb = BigInt::from(k);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(p_max as usize);
    if p_max == 0 {
        return rows;
    }
    rows.push(vec![BigInt::zero(), kb.clone()]);
    for p in 1..p_max {
        let prev = &rows[p as usize - 1];
        let mut row = vec![BigInt::zero(); p as usize + 2];
        for i in 0..p as i64 {
            let idx = (i + 1) as usize;
            row[idx] = &prev[idx - 1] - BigInt::from(2 * p as i64 + k as i64 - i) * &prev[idx];
        }
        row[p as usize + 1] = &prev[p as usize] + BigInt::from(p) + &kb;
        rows.push(row);
    }
    rows
}

/// `α(p, i, k)` for `p >= 1`, `-1 <= i < p`.
pub fn alpha_coeff(p: u32, i: i64, k: u32) -> Result<BigInt> {
    if p == 0 || i < -1 || i >= p as i64 {
        return domain(format!("alpha({p}, {i}, {k}) is outside -1 <= i < p, p >= 1"));
    }
    let table = alpha_table(p, k);
    Ok(table[p as usize - 1][(i + 1) as usize].clone())
}

/// `∏_(q=0)^(n-1) (base - q)`, empty product 1.
fn falling(base: i64, n: i64) -> BigInt {
    (0..n.max(0)).fold(BigInt::one(), |acc, q| acc * BigInt::from(base - q))
}

/// `B(n, ℓ)` with `b_ij = ∏_(q=0)^(i-2) (ℓ + 2(j-1) - q)`.
pub fn build_b(n: u32, ell: u32) -> Vec<Vec<BigInt>> {
    (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| falling(ell as i64 + 2 * (j - 1), i - 1))
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `∏_(q=0)^(n-1) q! 2^q`.
pub fn det_b_closed_form(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut fact = BigInt::one();
    for q in 0..n {
        if q > 0 {
            fact *= BigInt::from(q);
        }
        acc *= &fact << q;
    }
    acc
}

/// `(elimination determinant, closed form)` for `B(n, ℓ)`.
pub fn det_b_check(n: u32, ell: u32) -> (BigInt, BigInt) {
    (bareiss_det(&build_b(n, ell)), det_b_closed_form(n))
}

/// Both sides of `∏_(q=0)^(m-1)(k+2(j-1)-q) = Σ_i α(m,i-1,k) ∏_(q=0)^(i-2)(k+2(j-1)-q)`.
pub fn reduction_identity_i(m: u32, k: u32, j: u32) -> (BigInt, BigInt) {
    let base = k as i64 + 2 * (j as i64 - 1);
    let table = alpha_table(m, k);
    let row = &table[m as usize - 1];
    let lhs = falling(base, m as i64);
    let rhs = (1..=m as i64).fold(BigInt::zero(), |acc, i| acc + &row[i as usize] * falling(base, i - 1));
    (lhs, rhs)
}

/// Both sides of `∏_(q=0)^(m-1)(k+2m-q) = m! 2^m + Σ_i α(m,i-1,k) ∏_(q=0)^(i-2)(k+2m-q)`.
pub fn reduction_identity_ii(m: u32, k: u32) -> (BigInt, BigInt) {
    let base = k as i64 + 2 * m as i64;
    let table = alpha_table(m, k);
    let row = &table[m as usize - 1];
    let lhs = falling(base, m as i64);
    let mfact = falling(m as i64, m as i64) << m;
    let rhs = (1..=m as i64).fold(mfact, |acc, i| acc + &row[i as usize] * falling(base, i - 1));
    (lhs, rhs)
}

fn big_to_ext(b: &BigInt) -> ExtReal {
    let hi = b.to_f64().unwrap_or(f64::NAN);
    let rest = b - BigInt::from_f64(hi).unwrap_or_default();
    ExtReal::from_pair(hi, rest.to_f64().unwrap_or(0.0))
}

/// Relative residual of `z^m J̃_k^(m)(z) = (-z)^m J̃_(k+m)(z) + Σ_i α(m,i-1,k) z^(i-1) J̃_k^(i-1)(z)`.
///
/// Both sides are formed relative to the leading coefficient of `J̃_k`, so
/// the whole comparison runs in double-double.
pub fn reduction_identity_iii_residual(m: u32, k: u32, d: u32, z: Complex64) -> Result<f64> {
    if m == 0 {
        return domain("identity needs m >= 1");
    }
    if z.norm() == 0.0 {
        return domain("identity holds for z != 0");
    }
    let ze = ExtComplex::from_c64(z);
    let table = alpha_table(m, k);
    let row = &table[m as usize - 1];
    let lhs = ze.powu(m) * jtilde_deriv_series(k, d, m, z)?.value;
    // lead(k+m)/lead(k) = 1 / (2^m (k+d/2)_m)
    let mut ratio = ExtReal::ONE;
    for j in 0..m {
        ratio = ratio.div_f64(2.0 * (k as f64 + d as f64 / 2.0 + j as f64));
    }
    let mut rhs = (-ze).powu(m) * jtilde_deriv_series(k + m, d, 0, z)?.value.scale(ratio);
    for i in 1..=m {
        let a = big_to_ext(&row[i as usize]);
        rhs += (ze.powu(i - 1) * jtilde_deriv_series(k, d, i - 1, z)?.value).scale(a);
    }
    let scale = lhs.abs_f64().max(rhs.abs_f64());
    Ok(if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs_f64() / scale
    })
}

fn lead(ell: u32, d: u32) -> Result<f64> {
    let a = ell as f64 + d as f64 / 2.0;
    Ok(((1.0 - a) * std::f64::consts::LN_2 - ln_gamma(a)?).exp())
}

/// `|det A - rhs| / max(|det A|, |rhs|)` with
/// `rhs = (-1)^(t(m-t)) det B(m-t, ℓ) det L(t, ℓ+m-t) ∏ γ_j^(m-t)`.
pub fn det_a_factor_check(spec: ProblemSpec, ell: u32, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return domain(format!("rho must be positive, got {rho}"));
    }
    let (d, m, t) = (spec.d, spec.m as usize, spec.t as usize);
    let n_poly = m - t;
    let gammas: Vec<ExtComplex> = gamma_points(rho, spec.t)
        .into_iter()
        .map(ExtComplex::from_c64)
        .collect();
    let gammas_c = gamma_points(rho, spec.t);

    let mut a = vec![vec![ExtComplex::ZERO; m]; m];
    let lead_l = lead(ell, d)?;
    for i in 0..m {
        for j in 0..n_poly {
            let v = falling(ell as i64 + 2 * j as i64, i as i64);
            a[i][j] = ExtComplex::from_real(big_to_ext(&v));
        }
        for p in 0..t {
            let g = gammas[p];
            let s = jtilde_deriv_series(ell, d, i as u32, gammas_c[p])?.value;
            a[i][n_poly + p] = (g.powu(i as u32) * s).scale_f64(lead_l);
        }
    }
    let det_a = complex_det(&a);

    let k = spec.secular_index(ell);
    let mut l = vec![vec![ExtComplex::ZERO; t]; t];
    for p in 0..t {
        for i in 0..t {
            let s = jtilde_deriv_series(k + i as u32, d, 0, gammas_c[p])?.value;
            l[i][p] = ((-gammas[p]).powu(i as u32) * s).scale_f64(lead(k + i as u32, d)?);
        }
    }
    let det_l = complex_det(&l);
    let det_b = big_to_ext(&det_b_closed_form(n_poly as u32));
    let mut rhs = det_l.scale(det_b);
    for g in &gammas {
        rhs = rhs * g.powu(n_poly as u32);
    }
    if (t * n_poly) % 2 == 1 {
        rhs = -rhs;
    }
    let scale = det_a.abs_f64().max(rhs.abs_f64());
    Ok(if scale == 0.0 {
        0.0
    } else {
        (det_a - rhs).abs_f64() / scale
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_coeff(1, 0, 5).unwrap(), BigInt::from(5));
        assert_eq!(alpha_coeff(2, 1, 3).unwrap(), BigInt::from(7));
        assert_eq!(alpha_coeff(2, 0, 3).unwrap(), BigInt::from(-15));
        assert_eq!(alpha_coeff(4, -1, 3).unwrap(), BigInt::zero());
        assert!(alpha_coeff(2, 2, 0).is_err());
        assert!(alpha_coeff(0, 0, 0).is_err());
    }

    #[test]
    fn det_b_examples() {
        assert_eq!(det_b_check(0, 4), (BigInt::one(), BigInt::one()));
        assert_eq!(det_b_check(1, 4).0, BigInt::one());
        assert_eq!(det_b_check(3, 2).0, BigInt::from(16));
        let (lu, closed) = det_b_check(5, 7);
        assert_eq!(closed, BigInt::from(1 * 2 * 8 * 48 * 384));
        assert_eq!(lu, closed);
    }

    #[test]
    fn bareiss_against_cofactor_expansion() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0], [4, 3, 5], [0, 1, -2]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        // 2(3·-2 - 5·1) + 1(4·-2 - 0) = -22 - 8
        assert_eq!(bareiss_det(&m), BigInt::from(-30));
    }

    #[test]
    fn reduction_identities_small() {
        for m in 1..=4 {
            for k in 0..=4 {
                for j in 1..=m {
                    let (l, r) = reduction_identity_i(m, k, j);
                    assert_eq!(l, r);
                }
                let (l, r) = reduction_identity_ii(m, k);
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn reduction_iii_first_order() {
        let r = reduction_identity_iii_residual(1, 2, 3, Complex64::new(2.0, 1.0)).unwrap();
        assert!(r < 1e-25, "{r}");
    }

    #[test]
    fn det_a_examples() {
        let r = det_a_factor_check(ProblemSpec::new(2, 2, 1).unwrap(), 0, 1.0).unwrap();
        assert!(r <= 1e-9, "{r}");
        let r = det_a_factor_check(ProblemSpec::new(3, 4, 2).unwrap(), 2, 3.0).unwrap();
        assert!(r <= 1e-8, "{r}");
        let r = det_a_factor_check(ProblemSpec::new(2, 3, 3).unwrap(), 1, 2.5).unwrap();
        assert!(r <= 1e-9, "{r}");
    }
}
