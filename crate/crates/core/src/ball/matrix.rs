//! The unscaled matrix `L(t, k)` and a small dense determinant.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::specfun::{jtilde, ExtComplex, ExtReal};

/// `γ_p = ρ e^(i(p-1)π/t)`, `p = 1..t`.
pub fn gamma_points(rho: f64, t: u32) -> Vec<Complex64> {
    (0..t)
        .map(|p| {
            let theta = p as f64 * std::f64::consts::PI / t as f64;
            Complex64::new(rho * theta.cos(), rho * theta.sin())
        })
        .collect()
}

/// `L(t, k)_(ij) = (-γ_j)^(i-1) J̃_(k+i-1)(γ_j)`.
pub fn build_l(t: u32, k: u32, d: u32, rho: f64) -> Result<Vec<Vec<Complex64>>> {
    if !(rho > 0.0) {
        return domain(format!("rho must be positive, got {rho}"));
    }
    let gammas = gamma_points(rho, t);
    let mut out = vec![vec![Complex64::new(0.0, 0.0); t as usize]; t as usize];
    for (j, &g) in gammas.iter().enumerate() {
        let mut pow = Complex64::new(1.0, 0.0);
        for i in 0..t as usize {
            out[i][j] = pow * jtilde(k + i as u32, d, g)?;
            pow *= -g;
        }
    }
    Ok(out)
}

/// Scalars the determinant routine works over.
pub trait DetScalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn modulus(&self) -> f64;
}

impl DetScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
}

impl DetScalar for ExtComplex {
    fn zero() -> Self {
        ExtComplex::ZERO
    }
    fn one() -> Self {
        ExtComplex::ONE
    }
    fn modulus(&self) -> f64 {
        self.abs_f64()
    }
}

impl DetScalar for ExtReal {
    fn zero() -> Self {
        ExtReal::ZERO
    }
    fn one() -> Self {
        ExtReal::ONE
    }
    fn modulus(&self) -> f64 {
        self.to_f64().abs()
    }
}

/// Determinant by LU with partial pivoting on the modulus. Sizes 1 and 2 use
/// the direct formulas; a singular matrix gives zero.
pub fn complex_det<T: DetScalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    match n {
        0 => return T::one(),
        1 => return m[0][0],
        2 => return m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {}
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let (piv, best) = (col..n)
            .map(|r| (r, a[r][col].modulus()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 {
            return T::zero();
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det = det * p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            for c in col + 1..n {
                let v = a[col][c];
                a[r][c] = a[r][c] - f * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_j, bessel_j_zero};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_points_examples() {
        assert_eq!(gamma_points(2.0, 1), vec![c(2.0, 0.0)]);
        let g = gamma_points(1.0, 2);
        assert!((g[1] - c(0.0, 1.0)).norm() < 1e-15);
        let g4 = gamma_points(1.0, 4);
        for (p, z) in g4.iter().enumerate() {
            assert!((z.arg() - p as f64 * std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        }
    }

    #[test]
    fn det_small_cases() {
        let id = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        assert_eq!(complex_det(&id), c(1.0, 0.0));
        let swap = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]];
        assert_eq!(complex_det(&swap), c(-1.0, 0.0));
    }

    #[test]
    fn det_row_scaling() {
        let mut m: Vec<Vec<Complex64>> = (0..4)
            .map(|i| (0..4).map(|j| c(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64)).collect())
            .collect();
        let d0 = complex_det(&m);
        let s = c(1.5, -0.5);
        for v in m[2].iter_mut() {
            *v *= s;
        }
        let d1 = complex_det(&m);
        assert!((d1 - s * d0).norm() < 1e-12 * d1.norm().max(1.0));
    }

    #[test]
    fn l_matrix_entries() {
        let z = bessel_j_zero(0.0, 1).unwrap();
        let l = build_l(1, 0, 2, z).unwrap();
        assert!(l[0][0].norm() < 1e-14);

        let l = build_l(2, 0, 2, 1.0).unwrap();
        let j0 = bessel_j(0.0, 1.0).unwrap();
        let j1 = bessel_j(1.0, 1.0).unwrap();
        assert!((l[0][0] - c(j0, 0.0)).norm() < 1e-15);
        assert!((l[0][1] - c(1.266_065_877_752_008_4, 0.0)).norm() < 1e-14);
        assert!((l[1][0] - c(-j1, 0.0)).norm() < 1e-15);
        // J̃_1(i) = I_1(1) · i for d = 2, so -i · J̃_1(i) = I_1(1)
        assert!((l[1][1] - c(0.565_159_103_992_485_1, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn l_determinant_vanishes_to_known_order() {
        // column j starts at γ_j^k times a Vandermonde row in γ_j², so
        // det L(t, k) ~ C ρ^(kt + t(t-1)) as ρ → 0
        for (t, k, d) in [(1u32, 0u32, 2u32), (2, 1, 3), (3, 2, 2)] {
            let r1 = 1e-2;
            let r2 = 2e-2;
            let d1 = complex_det(&build_l(t, k, d, r1).unwrap()).norm();
            let d2 = complex_det(&build_l(t, k, d, r2).unwrap()).norm();
            let order = (d2 / d1).ln() / 2f64.ln();
            let expected = (k * t + t * (t - 1)) as f64;
            assert!((order - expected).abs() < 1e-2, "t={t} k={k}: {order} vs {expected}");
        }
    }
}
