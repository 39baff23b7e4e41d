//! Reference values and inequality checks on exact forms.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::basis::GalerkinBasis;
use super::rational::RationalMatrix;
use crate::ball::brent;
use crate::error::{domain, Result};
use crate::specfun::ln_bigint_abs;

/// Seed of the pseudo-random test vectors.
pub const GN_SEED: u64 = 0x5EED;

/// Knuth's MMIX linear congruential generator; reproducible across platforms.
#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        self.0
    }

    /// Integer in `-10..=10`.
    pub fn small_int(&mut self) -> i64 {
        ((self.next_u64() >> 33) % 21) as i64 - 10
    }

    /// Non-zero coefficient vector of length `n` with entries in `-10..=10`.
    pub fn vector(&mut self, n: usize) -> Vec<BigRational> {
        loop {
            let v: Vec<i64> = (0..n).map(|_| self.small_int()).collect();
            if v.iter().any(|&x| x != 0) {
                return v.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
            }
        }
    }
}

/// Clamped-clamped beam on `(-1, 1)`: `cos(2β) cosh(2β) = 1`, `λ = β⁴`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BeamRoot {
    pub beta: f64,
    pub lambda: f64,
}

/// `k`-th root (`k >= 1`) of the clamped beam frequency equation.
pub fn clamped_beam_root(k: u32) -> Result<BeamRoot> {
    if k == 0 {
        return domain("beam roots are numbered from 1");
    }
    // x = 2β solves cos x = sech x, with one root in (kπ, (k+1)π)
    let f = |x: f64| Ok(x.cos() - 1.0 / x.cosh());
    let pi = std::f64::consts::PI;
    let (a, b) = (f64::from(k) * pi, f64::from(k + 1) * pi);
    let x = brent(f, a, b, f(a)?, f(b)?, 1e-15)?;
    let beta = x / 2.0;
    Ok(BeamRoot {
        beta,
        lambda: beta.powi(4),
    })
}

/// First clamped beam eigenvalue on `(-1, 1)`.
pub fn clamped_beam_reference() -> Result<BeamRoot> {
    clamped_beam_root(1)
}

fn ln_rational(q: &BigRational) -> f64 {
    ln_bigint_abs(q.numer()) - ln_bigint_abs(q.denom())
}

/// `ln rhs - ln lhs` of
/// `(∫|∇^(m-t)u|²)^s <= (∫|∇^(m-s)u|²)^t (∫|∇^m u|²)^(s-t)`.
pub fn gn_check(basis: &GalerkinBasis, u: &[BigRational], t: u32, s: u32) -> Result<f64> {
    let forms = basis.forms_up_to(basis.m)?;
    gn_margin(&forms, basis.m, u, t, s)
}

/// [`gn_check`] on precomputed forms `[Q_0, …, Q_m]`.
pub fn gn_margin(
    forms: &[RationalMatrix],
    m: u32,
    u: &[BigRational],
    t: u32,
    s: u32,
) -> Result<f64> {
    if !(t <= s && s <= m) {
        return domain(format!("need 0 <= t <= s <= m, got t={t}, s={s}, m={m}"));
    }
    if u.len() != forms[0].len() {
        return domain("coefficient vector does not match the basis");
    }
    if u.iter().all(Zero::is_zero) {
        return domain("the zero vector has no Rayleigh quotients");
    }
    let lq = |p: u32| ln_rational(&forms[p as usize].quad(u));
    let lhs = f64::from(s) * lq(m - t);
    let rhs = f64::from(t) * lq(m - s) + f64::from(s - t) * lq(m);
    Ok(rhs - lhs)
}

/// First violation of `Q_p(e)² <= Q_(p-1)(e) Q_(p+1)(e)` over basis vectors
/// `e` and `1 <= p <= m-1`, checked exactly. `None` when the chain holds.
pub fn cauchy_schwarz_violation(basis: &GalerkinBasis) -> Result<Option<(usize, u32)>> {
    let forms = basis.forms_up_to(basis.m)?;
    for j in 0..basis.len() {
        for p in 1..basis.m {
            let q = |k: u32| forms[k as usize].get(j, j).clone();
            let mid = q(p);
            if &mid * &mid > q(p - 1) * q(p + 1) {
                return Ok(Some((j, p)));
            }
        }
    }
    Ok(None)
}

/// Exact `Q_p(u)² <= Q_(p-1)(u) Q_(p+1)(u)` for one vector.
pub fn cauchy_schwarz_holds(forms: &[RationalMatrix], u: &[BigRational], p: usize) -> bool {
    let mid = forms[p].quad(u);
    let prod = forms[p - 1].quad(u) * forms[p + 1].quad(u);
    !(&mid * &mid > prod) && !mid.is_negative()
}
