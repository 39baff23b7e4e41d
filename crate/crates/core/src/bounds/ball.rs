//! Bounds for the first eigenvalue on the unit ball.

use serde::Serialize;

use super::exact::{dirichlet_lower_exact, upper_mt_exact, PiRational};
use super::logvalue::{LogValue, PLAIN_LIMIT};
use crate::ball::ProblemSpec;
use crate::error::{domain, Result};
use crate::specfun::{bessel_j_zero, factorial, ln_biguint, ln_gamma};

fn check_md(m: u32, d: u32) -> Result<()> {
    if m == 0 || d == 0 {
        return domain(format!("need m >= 1 and d >= 1, got m={m}, d={d}"));
    }
    Ok(())
}

/// `2^(2m) Γ(m+1) Γ(m+d/2) / Γ(d/2)`, a lower bound for `λ_1^(m)(B)`.
pub fn dirichlet_lower(m: u32, d: u32) -> Result<LogValue> {
    check_md(m, d)?;
    Ok(dirichlet_lower_exact(m, d).to_log())
}

/// Rayleigh quotient of `(1-|x|²)^m`, an upper bound for `λ_1^(m)(B)`.
pub fn dirichlet_upper(m: u32, d: u32) -> Result<LogValue> {
    upper_mt(m, 0, d)
}

/// Rayleigh quotient `∫|∇^m f|² / ∫|∇^h f|²` of `f = (1-|x|²)^m`, an upper
/// bound for `λ_1^(m,m-h)(B)`.
pub fn upper_mt(m: u32, h: u32, d: u32) -> Result<LogValue> {
    check_md(m, d)?;
    Ok(upper_mt_exact(m, h, d)?.to_log())
}

/// Lower and upper products of squared Bessel zeros for `λ_1^(m,t)(B)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProductBounds {
    pub lower: LogValue,
    pub upper: LogValue,
    /// Set when an order `-1` appeared and the zeros of `J_1` were used.
    pub order_minus_one: bool,
}

fn zero_sq(kappa: f64, m: u32, t: u32, d: u32) -> Result<(LogValue, bool)> {
    if kappa < -1.0 {
        return domain(format!(
            "Bessel order {kappa} below -1 in the product bound for (m={m}, t={t}, d={d})"
        ));
    }
    let j = bessel_j_zero(kappa, 1)?;
    Ok((LogValue::from_ln(2.0 * j.ln()), kappa == -1.0))
}

fn order(h: u32, d: u32) -> f64 {
    f64::from(h) + f64::from(d) / 2.0 - 2.0
}

fn check_mt(m: u32, t: u32, d: u32) -> Result<()> {
    if t == 0 || t > m || d == 0 {
        return domain(format!("need 1 <= t <= m and d >= 1, got m={m}, t={t}, d={d}"));
    }
    Ok(())
}

/// `∏_{h=m-t}^{m-1} j²_{h+d/2-2,1}` and `j_{m+d/2-2,1}^(2t)`.
///
/// For `m = t` the product reaches `h = 0`; with `d = 2` its order is `-1`
/// and the lower value is not a valid bound (it exceeds the upper one for
/// `m = t = 1`). See [`product_lower_direct`] for the shifted range.
pub fn product_lower_and_bessel_upper(m: u32, t: u32, d: u32) -> Result<ProductBounds> {
    check_mt(m, t, d)?;
    let mut lower = LogValue::ONE;
    let mut flag = false;
    for h in m - t..m {
        let (v, f) = zero_sq(order(h, d), m, t, d)?;
        lower = lower * v;
        flag |= f;
    }
    let (top, f) = zero_sq(order(m, d), m, t, d)?;
    Ok(ProductBounds {
        lower,
        upper: top.powf(f64::from(t)),
        order_minus_one: flag || f,
    })
}

/// `∏_{h=m-t+1}^{m} j²_{h+d/2-2,1}`, i.e. `λ_1^(m,1) ∏_{h=m-t+1}^{m-1} λ_1^(h,1)`
/// on the ball.
pub fn product_lower_direct(m: u32, t: u32, d: u32) -> Result<LogValue> {
    check_mt(m, t, d)?;
    let mut lower = LogValue::ONE;
    for h in m - t + 1..=m {
        lower = lower * zero_sq(order(h, d), m, t, d)?.0;
    }
    Ok(lower)
}

/// `2m/e + (d/(2e)) ln m`.
pub fn two_term_asymptotic(m: u32, d: u32) -> f64 {
    let e = std::f64::consts::E;
    let m = f64::from(m);
    2.0 * m / e + f64::from(d) / (2.0 * e) * m.ln()
}

/// `(1/2) [(m!)² (4m+1)! / ((2m)! (2m+1)!)]^(1/(2m))`, an upper bound for
/// `[λ_1^(m)(-1,1)]^(1/(2m))`.
pub fn erve_bound(m: u32) -> Result<f64> {
    if m == 0 {
        return domain("need m >= 1");
    }
    let m = u64::from(m);
    let f = |n| ln_biguint(&factorial(n));
    let ln = 2.0 * f(m) + f(4 * m + 1) - f(2 * m) - f(2 * m + 1);
    Ok(0.5 * (ln / (2 * m) as f64).exp())
}

/// `j_{d/2-1,1}^(2m)`, the first eigenvalue with Navier conditions.
pub fn navier_reference(m: u32, d: u32) -> Result<LogValue> {
    check_md(m, d)?;
    let j = bessel_j_zero(f64::from(d) / 2.0 - 1.0, 1)?;
    Ok(LogValue::from_ln(2.0 * f64::from(m) * j.ln()))
}

fn asymptotic_core(m: u32, d: u32) -> Result<f64> {
    let (mf, df) = (f64::from(m), f64::from(d));
    let c = (2.0 * std::f64::consts::PI).ln() - ln_gamma(df / 2.0)?;
    Ok(2.0 * mf * (2.0 * mf / std::f64::consts::E).ln() + df / 2.0 * mf.ln() + c)
}

/// `ln dirichlet_lower - [2m ln(2m/e) + (d/2) ln m + ln(2π/Γ(d/2))]`.
pub fn lower_asymptotic_residual(m: u32, d: u32) -> Result<f64> {
    Ok(dirichlet_lower(m, d)?.ln_mag - asymptotic_core(m, d)?)
}

/// `ln dirichlet_upper - [2m ln(2m/e) + (d/2) ln m + ln(2^(d/2) 2π/Γ(d/2))]`.
pub fn upper_asymptotic_residual(m: u32, d: u32) -> Result<f64> {
    let shift = f64::from(d) / 2.0 * std::f64::consts::LN_2;
    Ok(dirichlet_upper(m, d)?.ln_mag - asymptotic_core(m, d)? - shift)
}

/// `[LB^(1/(2m)), UB^(1/(2m))]` minus the two-term expansion.
pub fn remainder_bracket(m: u32, d: u32) -> Result<(f64, f64)> {
    let p = 1.0 / (2.0 * f64::from(m));
    let a = two_term_asymptotic(m, d);
    Ok((
        dirichlet_lower(m, d)?.powf(p).to_f64() - a,
        dirichlet_upper(m, d)?.powf(p).to_f64() - a,
    ))
}

/// `ln(upper/lower)` of the first-eigenvalue sandwich; tends to `(d/2) ln 2`.
pub fn log_gap(m: u32, d: u32) -> Result<f64> {
    Ok(dirichlet_upper(m, d)?.log_ratio(dirichlet_lower(m, d)?))
}

/// Sandwich for `λ_1^(m,m-h)(B)` with normalised values and references.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub spec: ProblemSpec,
    pub h: u32,
    pub lower: LogValue,
    pub upper: LogValue,
    /// Plain values, absent at or beyond [`PLAIN_LIMIT`].
    pub lower_plain: Option<f64>,
    pub upper_plain: Option<f64>,
    /// `lower^(1/(2t))`.
    pub normalized_lower: f64,
    pub normalized_upper: f64,
    pub asymptotic_two_term: f64,
    pub navier: LogValue,
    pub lower_source: &'static str,
    pub upper_source: &'static str,
}

/// Bounds for `λ_1^(m,m-h)(B)`. With `h = 0` this is the sandwich for the
/// Dirichlet problem; for `h > 0` the lower end is `dirichlet_lower(m-h)`,
/// which bounds `λ_1^(m-h)(B) <= λ_1^(m,m-h)(B)` from below.
pub fn ball_bounds(d: u32, m: u32, h: u32) -> Result<BoundsReport> {
    check_md(m, d)?;
    if h >= m {
        return domain(format!("need 0 <= h < m, got h={h}, m={m}"));
    }
    let t = m - h;
    let spec = ProblemSpec::new(d, m, t)?;
    let lower_exact = dirichlet_lower_exact(t, d);
    let upper_exact = upper_mt_exact(m, h, d)?;
    let (lower, upper) = (lower_exact.to_log(), upper_exact.to_log());
    let plain = |x: &PiRational| Some(x.to_f64()).filter(|v| v.abs() < PLAIN_LIMIT);
    let p = 1.0 / (2.0 * f64::from(t));
    Ok(BoundsReport {
        spec,
        h,
        lower,
        upper,
        lower_plain: plain(&lower_exact),
        upper_plain: plain(&upper_exact),
        normalized_lower: lower.powf(p).to_f64(),
        normalized_upper: upper.powf(p).to_f64(),
        asymptotic_two_term: two_term_asymptotic(m, d),
        navier: navier_reference(m, d)?,
        lower_source: if h == 0 { "auxiliary-sigma" } else { "order-reduction" },
        upper_source: if h == 0 { "test-function" } else { "test-function-mt" },
    })
}
