//! Exact symmetric matrices and their reduction to a standard eigenproblem.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::specfun::ExtReal;

/// Dense square matrix of exact rationals, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RationalMatrix { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Principal submatrix on `idx`.
    pub fn select(&self, idx: &[usize]) -> Self {
        RationalMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// `uᵀ M u`.
    pub fn quad(&self, u: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..self.n {
            if u[i].is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for j in 0..self.n {
                if !u[j].is_zero() {
                    row += self.get(i, j) * &u[j];
                }
            }
            s += &u[i] * row;
        }
        s
    }

    /// Exact `M = L D Lᵀ` with unit lower `L`; fails on a non-positive pivot.
    pub fn ldl(&self) -> Result<(RationalMatrix, Vec<BigRational>)> {
        let n = self.n;
        let mut l = RationalMatrix::zeros(n);
        let mut dg: Vec<BigRational> = Vec::with_capacity(n);
        for j in 0..n {
            let mut dj = self.get(j, j).clone();
            for k in 0..j {
                dj -= l.get(j, k) * l.get(j, k) * &dg[k];
            }
            if !dj.is_positive() {
                return Err(Error::Conditioning(format!(
                    "mass matrix is not positive definite (pivot {j} of {n}); \
                     reduce the basis size or orthogonalise the basis"
                )));
            }
            l.set(j, j, BigRational::from_integer(1.into()));
            for i in j + 1..n {
                let mut v = self.get(i, j).clone();
                for k in 0..j {
                    v -= l.get(i, k) * l.get(j, k) * &dg[k];
                }
                l.set(i, j, v / &dj);
            }
            dg.push(dj);
        }
        Ok((l, dg))
    }

    /// `L⁻¹ M L⁻ᵀ` for unit lower `L`.
    pub fn congruence_inverse(&self, l: &RationalMatrix) -> RationalMatrix {
        let x = forward_solve(l, self);
        forward_solve(l, &x.transpose())
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }
}

/// Solve `L X = M` for unit lower `L`.
fn forward_solve(l: &RationalMatrix, m: &RationalMatrix) -> RationalMatrix {
    let n = m.n;
    let mut x = m.clone();
    for col in 0..n {
        for i in 0..n {
            let mut v = x.get(i, col).clone();
            for k in 0..i {
                let lik = l.get(i, k);
                if !lik.is_zero() {
                    v -= lik * x.get(k, col);
                }
            }
            x.set(i, col, v);
        }
    }
    x
}

fn bigint_to_ext(n: &BigInt) -> ExtReal {
    // n has at most ~120 bits here, so two pieces represent it exactly
    let hi = n.to_f64().unwrap_or(f64::NAN);
    let rest = n - BigInt::from_f64(hi).unwrap_or_default();
    ExtReal::from_pair(hi, rest.to_f64().unwrap_or(0.0))
}

fn pow2(e: i64) -> ExtReal {
    let mut v = ExtReal::ONE;
    let mut e = e;
    while e != 0 {
        let step = e.clamp(-1000, 1000);
        v = v.mul_f64(2f64.powi(step as i32));
        e -= step;
    }
    v
}

/// Nearest double-double to an exact rational.
pub fn rational_to_ext(q: &BigRational) -> ExtReal {
    if q.is_zero() {
        return ExtReal::ZERO;
    }
    let neg = q.numer().sign() == Sign::Minus;
    let num = q.numer().abs();
    let den = q.denom().clone();
    // scale so that the integer quotient carries ~115 significant bits
    let shift = 115 - (num.bits() as i64 - den.bits() as i64);
    let quot = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let v = bigint_to_ext(&quot) * pow2(-shift);
    if neg {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ldl_reconstructs() {
        let m = RationalMatrix::from_fn(3, |i, j| q(1, (i + j + 1) as i64));
        let (l, d) = m.ldl().unwrap();
        let back = RationalMatrix::from_fn(3, |i, j| {
            (0..3).fold(BigRational::zero(), |acc, k| acc + l.get(i, k) * l.get(j, k) * &d[k])
        });
        assert_eq!(back, m);
        let r = m.congruence_inverse(&l);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { d[i].clone() } else { BigRational::zero() };
                assert_eq!(r.get(i, j), &want);
            }
        }
    }

    #[test]
    fn indefinite_is_a_conditioning_error() {
        let m = RationalMatrix::from_fn(2, |i, j| if i == j { q(1, 1) } else { q(2, 1) });
        assert!(matches!(m.ldl(), Err(Error::Conditioning(_))));
    }

    #[test]
    fn rational_conversion_is_double_double_accurate() {
        let third = rational_to_ext(&q(1, 3));
        let err = (third.mul_f64(3.0) - ExtReal::ONE).abs().to_f64();
        assert!(err < 1e-31);
        let big = BigRational::new(BigInt::from(10).pow(400) + 1, BigInt::from(7).pow(450));
        let v = rational_to_ext(&big);
        let ln = 400.0 * 10f64.ln() - 450.0 * 7f64.ln();
        assert!((v.to_f64().ln() - ln).abs() < 1e-12);
        assert_eq!(rational_to_ext(&q(-5, 2)).to_f64(), -2.5);
    }

    #[test]
    fn quadratic_form() {
        let m = RationalMatrix::from_fn(2, |i, j| q((i + j + 1) as i64, 1));
        assert_eq!(m.quad(&[q(1, 1), q(-1, 1)]), q(1 - 2 - 2 + 3, 1));
    }
}
