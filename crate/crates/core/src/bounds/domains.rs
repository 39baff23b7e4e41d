//! Bounds on domains other than the ball.

use super::ball::{dirichlet_lower, upper_mt};
use super::exact::ball_volume;
use super::logvalue::LogValue;
use crate::error::{domain, Result};
use crate::specfun::{factorial, ln_biguint};

/// Leading Weyl term of `λ_k^(1/(2t))`: `2π (k / (ω_d |Ω|))^(1/d)`.
pub fn weyl_leading(k: u64, d: u32, volume: f64) -> Result<f64> {
    if k == 0 || d == 0 || !(volume > 0.0) {
        return domain(format!("need k >= 1, d >= 1, volume > 0; got k={k}, d={d}, volume={volume}"));
    }
    let omega = ball_volume(d).to_f64();
    Ok(2.0 * std::f64::consts::PI * (k as f64 / (omega * volume)).powf(1.0 / f64::from(d)))
}

/// `(2m)! Σ_p a_p^(-2m)` for the box `∏ (-a_p, a_p)`.
pub fn hyperrectangle_lower(m: u32, sides: &[f64]) -> Result<LogValue> {
    if sides.is_empty() {
        return domain("hyperrectangle needs at least one side");
    }
    if let Some(a) = sides.iter().find(|a| !(**a > 0.0) || !a.is_finite()) {
        return domain(format!("half-lengths must be positive, got {a}"));
    }
    let two_m = 2.0 * f64::from(m);
    let sum = sides
        .iter()
        .map(|a| LogValue::from_ln(-two_m * a.ln()))
        .fold(LogValue::ZERO, LogValue::add);
    Ok(LogValue::from_ln(ln_biguint(&factorial(2 * u64::from(m)))) * sum)
}

/// Certified interval for `λ_k^(m,m-h)(Ω)`, given `λ_1^(m,m-h)(B) ∈ [lo, hi]`.
///
/// `Ω` lies inside a ball of radius `diameter/2` and contains `k` disjoint
/// balls of radius `inradius/k`.
pub fn enclosure_with_ball_interval(
    k: u64,
    t: u32,
    diameter: f64,
    inradius: f64,
    ball: (LogValue, LogValue),
) -> Result<(LogValue, LogValue)> {
    if k == 0 || t == 0 {
        return domain("need k >= 1 and t >= 1");
    }
    if !(inradius > 0.0) || !(diameter >= 2.0 * inradius) || !diameter.is_finite() {
        return domain(format!(
            "inconsistent geometry: diameter={diameter}, inradius={inradius}"
        ));
    }
    let two_t = 2.0 * f64::from(t);
    let outer = diameter / 2.0;
    let inner = inradius / k as f64;
    let lower = ball.0 * LogValue::from_ln(-two_t * outer.ln());
    let upper = ball.1 * LogValue::from_ln(-two_t * inner.ln());
    Ok((lower, upper))
}

/// [`enclosure_with_ball_interval`] with the closed-form ball interval
/// `[dirichlet_lower(m-h), upper_mt(m, h)]`.
pub fn general_domain_enclosure(
    k: u64,
    m: u32,
    h: u32,
    diameter: f64,
    inradius: f64,
    d: u32,
) -> Result<(LogValue, LogValue)> {
    if h >= m {
        return domain(format!("need 0 <= h < m, got h={h}, m={m}"));
    }
    let ball = (dirichlet_lower(m - h, d)?, upper_mt(m, h, d)?);
    enclosure_with_ball_interval(k, m - h, diameter, inradius, ball)
}
