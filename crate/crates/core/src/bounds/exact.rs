//! Exact evaluation of the closed forms on the ball.
//!
//! Every Gamma value met here has an integer or half-integer argument, so it
//! is a rational multiple of a power of `√π`. [`PiRational`] carries that
//! representation through products and quotients without rounding.

use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::logvalue::LogValue;
use crate::error::{domain, Result};
use crate::specfun::{double_factorial, factorial};

/// `q · π^(half_pi/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiRational {
    pub q: BigRational,
    pub half_pi: i32,
}

impl PiRational {
    pub fn rational(q: BigRational) -> Self {
        PiRational { q, half_pi: 0 }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        PiRational::rational(BigRational::from_integer(n.into()))
    }

    pub fn pow2(e: i64) -> Self {
        let p = BigInt::one() << e.unsigned_abs();
        let q = if e >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        };
        PiRational::rational(q)
    }

    pub fn to_log(&self) -> LogValue {
        let r = LogValue::from_rational(&self.q);
        r * LogValue::from_ln(0.5 * f64::from(self.half_pi) * std::f64::consts::PI.ln())
    }

    /// Nearest float, from the rational part directly when it is in range.
    pub fn to_f64(&self) -> f64 {
        let pi = std::f64::consts::PI.sqrt().powi(self.half_pi);
        match self.q.to_f64() {
            Some(v) if v.is_finite() && v != 0.0 && (v * pi).is_finite() => v * pi,
            _ => self.to_log().to_f64(),
        }
    }
}

impl Mul for PiRational {
    type Output = PiRational;
    fn mul(self, rhs: PiRational) -> PiRational {
        PiRational {
            q: self.q * rhs.q,
            half_pi: self.half_pi + rhs.half_pi,
        }
    }
}

impl Div for PiRational {
    type Output = PiRational;
    fn div(self, rhs: PiRational) -> PiRational {
        PiRational {
            q: self.q / rhs.q,
            half_pi: self.half_pi - rhs.half_pi,
        }
    }
}

fn big(n: num_bigint::BigUint) -> BigInt {
    BigInt::from(n)
}

fn dfact(n: i64) -> BigInt {
    // callers only pass n >= -1
    big(double_factorial(n).expect("double factorial argument below -1"))
}

/// `Γ(n/2)` for `n >= 1`.
pub fn gamma_half(n: u64) -> PiRational {
    assert!(n >= 1, "gamma_half needs n >= 1");
    if n % 2 == 0 {
        PiRational::integer(big(factorial(n / 2 - 1)))
    } else {
        let q = BigRational::new(dfact(n as i64 - 2), BigInt::one() << ((n - 1) / 2));
        PiRational { q, half_pi: 1 }
    }
}

/// `Γ(x)` for an integer or half-integer `x = n2/2`.
fn g(n2: u64) -> PiRational {
    gamma_half(n2)
}

/// Surface measure `|S^(d-1)| = 2π^(d/2)/Γ(d/2)`.
pub fn sphere_area(d: u32) -> PiRational {
    let pi_pow = PiRational {
        q: BigRational::from_integer(BigInt::from(2)),
        half_pi: d as i32,
    };
    pi_pow / gamma_half(u64::from(d))
}

/// Volume of the unit ball, `ω_d = π^(d/2)/Γ(d/2+1)`.
pub fn ball_volume(d: u32) -> PiRational {
    PiRational {
        q: BigRational::one(),
        half_pi: d as i32,
    } / gamma_half(u64::from(d) + 2)
}

/// `∫₀¹ (1-r²)^α r^β dr = (2α)!!(β-1)!!/(β+2α+1)!!`.
pub fn beta_moment(alpha: u32, beta: u32) -> BigRational {
    let (a, b) = (i64::from(alpha), i64::from(beta));
    BigRational::new(dfact(2 * a) * dfact(b - 1), dfact(b + 2 * a + 1))
}

/// Coefficients `c_i` of `Δ^t (1-r²)^m = Σ c_i r^(2i)` for the radial
/// Laplacian in `d` dimensions.
pub fn radial_iterated_laplacian(m: u32, t: u32, d: u32) -> Result<Vec<BigRational>> {
    if t > m || d == 0 {
        return domain(format!("need 0 <= t <= m and d >= 1, got m={m}, t={t}, d={d}"));
    }
    let (m, t, d) = (i64::from(m), i64::from(t), i64::from(d));
    let mut out = Vec::with_capacity((m - t + 1) as usize);
    for h in t..=m {
        let binom: BigInt = num_integer::binomial(BigInt::from(m), BigInt::from(h));
        let sign = if h % 2 == 0 { 1 } else { -1 };
        let num = binom * sign * dfact(2 * h) * dfact(2 * h + d - 2);
        let den = dfact(2 * h - 2 * t) * dfact(2 * h + d - 2 * t - 2);
        out.push(BigRational::new(num, den));
    }
    Ok(out)
}

/// Exact `∫_B |∇^t (1-|x|²)^m|²`.
pub fn grad_t_norm_ball_exact(m: u32, t: u32, d: u32) -> Result<PiRational> {
    if t > m || d == 0 {
        return domain(format!("need 0 <= t <= m and d >= 1, got m={m}, t={t}, d={d}"));
    }
    let (m, t, d) = (u64::from(m), u64::from(t), u64::from(d));
    let gm = g(2 * m + 2);
    let gmt = g(2 * (m - t) + 2);
    let num = sphere_area(d as u32)
        * PiRational::pow2(2 * t as i64 - 1)
        * gm.clone()
        * gm
        * g(2 * t + d)
        * g(2 * (2 * m - 2 * t) + 2);
    let den = gmt.clone() * gmt * g(2 * (2 * m - t + 1) + d);
    Ok(num / den)
}

pub fn grad_t_norm_ball(m: u32, t: u32, d: u32) -> Result<LogValue> {
    Ok(grad_t_norm_ball_exact(m, t, d)?.to_log())
}

/// Exact smallest eigenvalue `σ` of the auxiliary problem on the ball.
pub fn sigma_aux_exact(m: u32, t: u32, d: u32) -> Result<BigRational> {
    if t == 0 || t > m || d == 0 {
        return domain(format!("need 1 <= t <= m and d >= 1, got m={m}, t={t}, d={d}"));
    }
    let (m, t, d) = (i64::from(m), i64::from(t), i64::from(d));
    let q = if m == t {
        BigRational::new(dfact(2 * m) * dfact(2 * m + d - 2), dfact(d - 2))
    } else if (m - t) % 2 == 0 {
        BigRational::new(
            dfact(m + t) * dfact(m + t + d - 2),
            dfact(m - t) * dfact(m - t + d - 2),
        )
    } else {
        BigRational::new(
            dfact(m + t - 1) * dfact(m + t + d - 1),
            dfact(m - t - 1) * dfact(m - t + d - 1),
        )
    };
    Ok(q)
}

pub fn sigma_aux(m: u32, t: u32, d: u32) -> Result<LogValue> {
    Ok(LogValue::from_rational(&sigma_aux_exact(m, t, d)?))
}

/// Exact `2^(2m) Γ(m+1) Γ(m+d/2) / Γ(d/2)`.
pub fn dirichlet_lower_exact(m: u32, d: u32) -> PiRational {
    let (m, d) = (u64::from(m), u64::from(d));
    PiRational::pow2(2 * m as i64) * g(2 * m + 2) * g(2 * m + d) / g(d)
}

/// Exact `2^(2m-2h) Γ²(m-h+1) Γ(2m-h+1+d/2) / ((m+d/2) Γ(h+d/2) Γ(2m-2h+1))`.
pub fn upper_mt_exact(m: u32, h: u32, d: u32) -> Result<PiRational> {
    if h >= m {
        return domain(format!("upper bound needs 0 <= h < m, got h={h}, m={m}"));
    }
    let (m, h, d) = (u64::from(m), u64::from(h), u64::from(d));
    let gmh = g(2 * (m - h) + 2);
    let num = PiRational::pow2(2 * (m - h) as i64) * gmh.clone() * gmh * g(2 * (2 * m - h + 1) + d);
    let den = PiRational::rational(BigRational::new(BigInt::from(2 * m + d), BigInt::from(2)))
        * g(2 * h + d)
        * g(2 * (2 * m - 2 * h) + 2);
    Ok(num / den)
}
