//! Generalized symmetric eigenproblem `A v = λ B v`.
//!
//! `B = L D Lᵀ` and `L⁻¹ A L⁻ᵀ` are formed exactly, so the ill-conditioning
//! of monomial bases never reaches floating point. Only the scaled matrix
//! `D^(-1/2) L⁻¹ A L⁻ᵀ D^(-1/2)` is rounded, to double-double, and
//! diagonalised by cyclic Jacobi rotations.

use super::rational::{rational_to_ext, RationalMatrix};
use crate::error::{domain, Error, Result};
use crate::specfun::ExtReal;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues of a symmetric double-double matrix, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<ExtReal>>) -> Result<Vec<ExtReal>> {
    let n = a.len();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.to_f64() == 0.0 {
                    continue;
                }
                let scale = (a[p][p].abs() * a[q][q].abs()).sqrt().to_f64();
                if apq.abs().to_f64() <= 1e-33 * scale {
                    a[p][q] = ExtReal::ZERO;
                    a[q][p] = ExtReal::ZERO;
                    continue;
                }
                rotated = true;
                let theta = (a[q][q] - a[p][p]) / (apq + apq);
                let t = if theta.abs().to_f64() > 1e150 {
                    theta.recip().mul_f64(0.5)
                } else {
                    let r = (theta.sqr() + ExtReal::ONE).sqrt();
                    let t = (theta.abs() + r).recip();
                    if theta.to_f64() < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = (t.sqr() + ExtReal::ONE).sqrt().recip();
                let s = t * c;
                let tau = s / (ExtReal::ONE + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = ExtReal::ZERO;
                a[q][p] = ExtReal::ZERO;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r][p];
                    let h = a[r][q];
                    let np = g - s * (h + g * tau);
                    let nq = h + s * (g - h * tau);
                    a[r][p] = np;
                    a[p][r] = np;
                    a[r][q] = nq;
                    a[q][r] = nq;
                }
            }
        }
        if !rotated {
            let mut ev: Vec<ExtReal> = (0..n).map(|i| a[i][i]).collect();
            ev.sort_by(|x, y| x.to_f64().total_cmp(&y.to_f64()));
            return Ok(ev);
        }
    }
    Err(Error::Numeric("Jacobi sweeps did not converge".into()))
}

/// Smallest `count` eigenvalues of `A v = λ B v`, `B` positive definite.
pub fn gen_sym_eig(a: &RationalMatrix, b: &RationalMatrix, count: usize) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return domain("matrices differ in size");
    }
    if !a.is_symmetric() || !b.is_symmetric() {
        return domain("matrices must be symmetric");
    }
    let (l, dg) = b.ldl()?;
    let red = a.congruence_inverse(&l);
    let n = a.len();
    let inv_sqrt: Vec<ExtReal> = dg.iter().map(|d| rational_to_ext(d).sqrt().recip()).collect();
    let c: Vec<Vec<ExtReal>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rational_to_ext(red.get(i, j)) * inv_sqrt[i] * inv_sqrt[j])
                .collect()
        })
        .collect();
    let ev = jacobi_eigenvalues(c)?;
    Ok(ev.into_iter().take(count).map(ExtReal::to_f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn identical_forms_give_ones() {
        let a = RationalMatrix::from_fn(4, |i, j| {
            BigRational::new(BigInt::from(1), BigInt::from((i + j + 1) as i64))
        });
        let ev = gen_sym_eig(&a, &a, 4).unwrap();
        for v in ev {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal() {
        let a = RationalMatrix::from_fn(2, |i, j| if i == j { q([1, 4][i]) } else { q(0) });
        let b = RationalMatrix::from_fn(2, |i, j| if i == j { q(1) } else { q(0) });
        assert_eq!(gen_sym_eig(&a, &b, 2).unwrap(), vec![1.0, 4.0]);
    }

    #[test]
    fn jacobi_two_by_two() {
        let m = vec![
            vec![ExtReal::from_f64(2.0), ExtReal::from_f64(1.0)],
            vec![ExtReal::from_f64(1.0), ExtReal::from_f64(2.0)],
        ];
        let ev = jacobi_eigenvalues(m).unwrap();
        assert!((ev[0].to_f64() - 1.0).abs() < 1e-30);
        assert!((ev[1].to_f64() - 3.0).abs() < 1e-30);
    }
}
