//! Polynomial bases that satisfy the Dirichlet conditions, and the exact
//! quadratic forms `Q_p(u, v) = ∫ D^p u : D^p v`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::eig::gen_sym_eig;
use super::rational::RationalMatrix;
use crate::error::{domain, Result};

pub const MAX_INTERVAL_BASIS: u32 = 48;
pub const MAX_INTERVAL_ORDER: u32 = 6;
pub const MAX_RADIAL_BASIS: u32 = 24;
pub const MAX_RADIAL_ORDER: u32 = 5;
pub const MAX_BOX_BASIS: u64 = 400;
pub const MAX_BOX_ORDER: u32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Geometry {
    /// `(-1, 1)`.
    Interval,
    /// `∏ (-a_p, a_p)` with the given half-lengths.
    Box(Vec<f64>),
    /// Degree-`ell` separated problem on the unit ball of `R^d`.
    Radial { d: u32, ell: u32 },
}

/// Basis of `n` functions (per coordinate for boxes) carrying the factor
/// `(1-x²)^m`, resp. `(1-r²)^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct GalerkinBasis {
    pub geometry: Geometry,
    pub m: u32,
    pub n: u32,
    sides: Vec<BigRational>,
}

type Poly = Vec<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_deriv(a: &[BigRational], times: u32) -> Poly {
    let mut p = a.to_vec();
    for _ in 0..times {
        if p.len() <= 1 {
            return Vec::new();
        }
        p = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
    }
    p
}

/// `(1 - s x²)^m x^j` as coefficients in `x`.
fn bubble(m: u32, j: u32, s: &BigRational) -> Poly {
    let factor = vec![BigRational::one(), BigRational::zero(), -s.clone()];
    let mut p = vec![BigRational::one()];
    for _ in 0..m {
        p = poly_mul(&p, &factor);
    }
    let mut shifted = vec![BigRational::zero(); j as usize];
    shifted.extend(p);
    shifted
}

/// `∫_{-a}^{a} p(x) q(x) dx`, given the precomputed moments `∫ x^k`.
fn pair_integral(p: &[BigRational], q: &[BigRational], moments: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (i, x) in p.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in q.iter().enumerate() {
            if (i + j) % 2 == 0 && !y.is_zero() {
                s += x * y * &moments[i + j];
            }
        }
    }
    s
}

/// Matrices `∫ φ_i^(k) φ_j^(k)` on `(-a, a)` for `k = 0..=p_max`.
fn interval_derivative_forms(m: u32, n: u32, a: &BigRational, p_max: u32) -> Vec<RationalMatrix> {
    let inv_a2 = (a * a).recip();
    let funcs: Vec<Poly> = (0..n).map(|j| bubble(m, j, &inv_a2)).collect();
    let deg = (2 * m + n) as usize;
    let mut moments = Vec::with_capacity(2 * deg + 1);
    let mut apow = a.clone();
    for k in 0..=2 * deg {
        moments.push(if k % 2 == 0 {
            &apow * BigRational::new(BigInt::from(2), BigInt::from(k + 1))
        } else {
            BigRational::zero()
        });
        apow *= a;
    }
    (0..=p_max)
        .map(|k| {
            let ders: Vec<Poly> = funcs.iter().map(|f| poly_deriv(f, k)).collect();
            let mut mat = RationalMatrix::zeros(n as usize);
            for i in 0..n as usize {
                for j in 0..=i {
                    let v = pair_integral(&ders[i], &ders[j], &moments);
                    mat.set(j, i, v.clone());
                    mat.set(i, j, v);
                }
            }
            mat
        })
        .collect()
}

/// Multi-indices `α` of length `d` with `|α| = p`.
fn compositions(p: u32, d: usize) -> Vec<Vec<u32>> {
    if d == 1 {
        return vec![vec![p]];
    }
    let mut out = Vec::new();
    for first in 0..=p {
        for mut rest in compositions(p - first, d - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial_rat(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(crate::specfun::factorial(u64::from(n))))
}

impl GalerkinBasis {
    pub fn interval(m: u32, n: u32) -> Result<Self> {
        if m == 0 || m > MAX_INTERVAL_ORDER || n == 0 || n > MAX_INTERVAL_BASIS {
            return domain(format!(
                "interval basis needs 1 <= m <= {MAX_INTERVAL_ORDER} and 1 <= n <= {MAX_INTERVAL_BASIS}, \
                 got m={m}, n={n}"
            ));
        }
        Ok(GalerkinBasis {
            geometry: Geometry::Interval,
            m,
            n,
            sides: vec![BigRational::one()],
        })
    }

    pub fn hyperrectangle(m: u32, sides: &[f64], n: u32) -> Result<Self> {
        let d = sides.len() as u64;
        let total = d.saturating_mul(u64::from(n).saturating_pow(d as u32));
        if d == 0 || m == 0 || m > MAX_BOX_ORDER || n == 0 || total > MAX_BOX_BASIS {
            return domain(format!(
                "box basis needs d >= 1, 1 <= m <= {MAX_BOX_ORDER} and d*n^d <= {MAX_BOX_BASIS}, \
                 got d={d}, m={m}, n={n}"
            ));
        }
        let mut exact = Vec::with_capacity(sides.len());
        for &a in sides {
            match BigRational::from_float(a) {
                Some(q) if a > 0.0 => exact.push(q),
                _ => return domain(format!("half-lengths must be positive and finite, got {a}")),
            }
        }
        Ok(GalerkinBasis {
            geometry: Geometry::Box(sides.to_vec()),
            m,
            n,
            sides: exact,
        })
    }

    pub fn radial(m: u32, ell: u32, d: u32, n: u32) -> Result<Self> {
        if m == 0 || m > MAX_RADIAL_ORDER || n == 0 || n > MAX_RADIAL_BASIS || d == 0 {
            return domain(format!(
                "radial basis needs d >= 1, 1 <= m <= {MAX_RADIAL_ORDER} and 1 <= n <= {MAX_RADIAL_BASIS}, \
                 got d={d}, m={m}, n={n}"
            ));
        }
        if d == 1 && ell > 1 {
            return domain("in one dimension only ell = 0 (even) and ell = 1 (odd) exist");
        }
        Ok(GalerkinBasis {
            geometry: Geometry::Radial { d, ell },
            m,
            n,
            sides: Vec::new(),
        })
    }

    /// Number of basis functions.
    pub fn len(&self) -> usize {
        match &self.geometry {
            Geometry::Box(s) => (self.n as usize).pow(s.len() as u32),
            _ => self.n as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        let d = self.sides.len();
        let n = self.n as usize;
        let mut out = vec![0; d];
        for q in (0..d).rev() {
            out[q] = idx % n;
            idx /= n;
        }
        out
    }

    /// Polynomial coefficients of basis function `j`, one factor per
    /// coordinate. Radial functions are `r^ell Σ c_i r^(2i)`.
    pub fn coefficients(&self, j: usize) -> Vec<Vec<BigRational>> {
        match &self.geometry {
            Geometry::Radial { .. } => vec![self.radial_poly(j)],
            _ => self
                .multi_index(j)
                .iter()
                .zip(&self.sides)
                .map(|(&jq, a)| bubble(self.m, jq as u32, &(a * a).recip()))
                .collect(),
        }
    }

    fn radial_poly(&self, j: usize) -> Poly {
        // (1 - s)^m s^j in s = r²
        let mut p = vec![BigRational::one()];
        for _ in 0..self.m {
            p = poly_mul(&p, &[rat(1), rat(-1)]);
        }
        let mut shifted = vec![BigRational::zero(); j];
        shifted.extend(p);
        shifted
    }

    /// Index sets that the forms never couple (parity classes).
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        match &self.geometry {
            Geometry::Radial { .. } => vec![(0..self.len()).collect()],
            _ => {
                let d = self.sides.len();
                let mut out = vec![Vec::new(); 1 << d];
                for j in 0..self.len() {
                    let key = self
                        .multi_index(j)
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (q, &i)| acc | ((i % 2) << q));
                    out[key].push(j);
                }
                out.retain(|b| !b.is_empty());
                out
            }
        }
    }

    /// Exact `Q_p`, `0 <= p <= m`.
    pub fn form(&self, p: u32) -> Result<RationalMatrix> {
        Ok(self.forms_up_to(p)?.pop().expect("at least one form"))
    }

    /// `[Q_0, …, Q_p_max]`.
    pub fn forms_up_to(&self, p_max: u32) -> Result<Vec<RationalMatrix>> {
        if p_max > self.m {
            return domain(format!("form order {p_max} exceeds m={}", self.m));
        }
        match &self.geometry {
            Geometry::Radial { d, ell } => Ok((0..=p_max).map(|p| self.radial_form(*d, *ell, p)).collect()),
            _ => Ok(self.box_forms_up_to(p_max)),
        }
    }

    fn box_forms_up_to(&self, p_max: u32) -> Vec<RationalMatrix> {
        let one_d: Vec<Vec<RationalMatrix>> = self
            .sides
            .iter()
            .map(|a| interval_derivative_forms(self.m, self.n, a, p_max))
            .collect();
        let d = self.sides.len();
        let size = self.len();
        let idx: Vec<Vec<usize>> = (0..size).map(|j| self.multi_index(j)).collect();
        (0..=p_max)
            .map(|p| {
                let weights: Vec<(Vec<u32>, BigRational)> = compositions(p, d)
                    .into_iter()
                    .map(|alpha| {
                        let den = alpha
                            .iter()
                            .fold(BigRational::one(), |acc, &k| acc * factorial_rat(k));
                        let w = factorial_rat(p) / den;
                        (alpha, w)
                    })
                    .collect();
                let mut mat = RationalMatrix::zeros(size);
                for i in 0..size {
                    for j in 0..=i {
                        let mut v = BigRational::zero();
                        for (alpha, w) in &weights {
                            let mut prod = w.clone();
                            for q in 0..d {
                                let e = one_d[q][alpha[q] as usize].get(idx[i][q], idx[j][q]);
                                if e.is_zero() {
                                    prod = BigRational::zero();
                                    break;
                                }
                                prod *= e;
                            }
                            v += prod;
                        }
                        mat.set(j, i, v.clone());
                        mat.set(i, j, v);
                    }
                }
                mat
            })
            .collect()
    }

    /// `∫₀¹ u (-Δ)^p v r^(d-1) dr` with the angular factor set to one.
    fn radial_form(&self, d: u32, ell: u32, p: u32) -> RationalMatrix {
        let n = self.n as usize;
        let polys: Vec<Poly> = (0..n).map(|j| self.radial_poly(j)).collect();
        let applied: Vec<Poly> = polys.iter().map(|g| neg_laplacian_pow(g, d, ell, p)).collect();
        let (l2, d) = (2 * i64::from(ell), i64::from(d));
        let mut mat = RationalMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut v = BigRational::zero();
                for (a, x) in polys[i].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (b, y) in applied[j].iter().enumerate() {
                        if !y.is_zero() {
                            let den = l2 + 2 * (a + b) as i64 + d;
                            v += x * y / BigInt::from(den);
                        }
                    }
                }
                mat.set(i, j, v);
            }
        }
        mat
    }
}

/// `(-Δ_{r,ℓ})^p` on `r^ℓ Σ c_i r^(2i)`, using
/// `Δ_{r,ℓ} r^(ℓ+2i) = 2i(2ℓ+2i+d-2) r^(ℓ+2i-2)`.
fn neg_laplacian_pow(c: &[BigRational], d: u32, ell: u32, p: u32) -> Poly {
    let mut cur = c.to_vec();
    for _ in 0..p {
        cur = (1..cur.len())
            .map(|i| {
                let i = i as i64;
                let f = 2 * i * (2 * i64::from(ell) + 2 * i + i64::from(d) - 2);
                -(&cur[i as usize] * BigInt::from(f))
            })
            .collect();
    }
    cur
}

/// A basis with its two forms `A = Q_m` and `B = Q_(m-t)`.
#[derive(Clone, Debug)]
pub struct Forms {
    pub basis: GalerkinBasis,
    pub t: u32,
    pub a: RationalMatrix,
    pub b: RationalMatrix,
}

impl Forms {
    fn new(basis: GalerkinBasis, t: u32) -> Result<Self> {
        if t == 0 || t > basis.m {
            return domain(format!("need 1 <= t <= m, got t={t}, m={}", basis.m));
        }
        let a = basis.form(basis.m)?;
        let b = basis.form(basis.m - t)?;
        Ok(Forms { basis, t, a, b })
    }

    /// Smallest `count` Ritz values over all parity blocks.
    pub fn ritz_values(&self, count: usize) -> Result<Vec<f64>> {
        let mut all = Vec::new();
        for block in self.basis.blocks() {
            let a = self.a.select(&block);
            let b = self.b.select(&block);
            all.extend(gen_sym_eig(&a, &b, count.min(block.len()))?);
        }
        all.sort_by(f64::total_cmp);
        all.truncate(count);
        Ok(all)
    }
}

/// Forms on `(-1, 1)` for the basis `(1-x²)^m x^j`, `j < n`.
pub fn interval_forms(m: u32, t: u32, n: u32) -> Result<Forms> {
    Forms::new(GalerkinBasis::interval(m, n)?, t)
}

/// Forms on the box with half-lengths `sides`, tensor basis with `n` factors
/// per coordinate.
pub fn box_forms(m: u32, t: u32, sides: &[f64], n: u32) -> Result<Forms> {
    Forms::new(GalerkinBasis::hyperrectangle(m, sides, n)?, t)
}

/// Forms of the degree-`ell` radial problem on the unit ball of `R^d`.
pub fn radial_forms(m: u32, t: u32, ell: u32, d: u32, n: u32) -> Result<Forms> {
    Forms::new(GalerkinBasis::radial(m, ell, d, n)?, t)
}
