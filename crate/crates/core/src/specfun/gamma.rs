//! Gamma function, Stirling expansion, double factorials and the Gauss sum
//! for `2F1(a, b; c; 1)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

const LANCZOS_G: f64 = 7.0;
// g = 7, n = 9 coefficient set.
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Lanczos evaluation of `ln Γ(x)` for `x >= 0.5`.
fn lanczos_ln_gamma(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

/// `ln Γ(x)` for positive finite `x`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return domain(format!("ln_gamma requires a positive finite argument, got {x}"));
    }
    // exact small factorials keep integer arguments on the nose
    if x == x.trunc() && x <= 30.0 {
        let mut acc = 0.0f64;
        let mut k = 2.0;
        while k < x {
            acc += f64::ln(k);
            k += 1.0;
        }
        return Ok(acc);
    }
    if x < 0.5 {
        return Ok(lanczos_ln_gamma(x + 1.0) - x.ln());
    }
    Ok(lanczos_ln_gamma(x))
}

/// `(ln |Γ(x)|, sign Γ(x))` for any real `x` that is not a pole.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return domain("ln_gamma_signed requires a finite argument");
    }
    if x > 0.0 {
        return Ok((ln_gamma(x)?, 1.0));
    }
    if x == x.trunc() {
        return domain(format!("Γ has a pole at {x}"));
    }
    let s = (std::f64::consts::PI * x).sin();
    let lg = std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - x)?;
    Ok((lg, s.signum()))
}

/// `Γ(x)` for any non-pole real `x`.
pub fn gamma(x: f64) -> Result<f64> {
    let (lg, s) = ln_gamma_signed(x)?;
    Ok(s * lg.exp())
}

/// Truncated Stirling expansion `(z + h - 1/2) ln z - z + ln(2π)/2`,
/// accurate to `O(1/z)`.
pub fn stirling_ln_gamma(z: f64, h: f64) -> Result<f64> {
    if !(z >= 2.0) || !h.is_finite() {
        return domain(format!("stirling_ln_gamma is an asymptotic formula for z >= 2, got {z}"));
    }
    Ok((z + h - 0.5) * z.ln() - z + LN_SQRT_2PI)
}

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// Exact `n!!` with the convention `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigUint> {
    if n < -1 {
        return domain(format!("double factorial undefined for n = {n}"));
    }
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= BigUint::from(k as u64);
        k -= 2;
    }
    Ok(acc)
}

/// Exact `n!`.
pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Natural log of a positive big integer, accurate to f64 precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(v) = n.to_f64() {
            if v.is_finite() {
                return v.ln();
            }
        }
    }
    let shift = bits - 60;
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of `|n|` for a signed big integer.
pub fn ln_bigint_abs(n: &BigInt) -> f64 {
    ln_biguint(&n.abs().to_biguint().unwrap_or_default())
}

/// Value of the Gauss sum `2F1(a, b; c; 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1AtOne {
    pub value: f64,
    /// Set when `c - a` or `c - b` is a pole of Γ; the value is then 0 by convention.
    pub denominator_pole: bool,
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.trunc()
}

/// Terminating hypergeometric sum for a non-positive integer `a`.
pub fn hyp2f1_terminating(a: f64, b: f64, c: f64) -> Result<f64> {
    if !is_nonpositive_integer(a) {
        return domain("terminating 2F1 sum needs a non-positive integer a");
    }
    let n_max = (-a) as u32;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..n_max {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        sum += term;
    }
    Ok(sum)
}

/// `2F1(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))` for `c > a + b`.
pub fn hyp2f1_at_one(a: f64, b: f64, c: f64) -> Result<Hyp2F1AtOne> {
    if !(c > a + b) {
        return domain(format!("2F1(a,b;c;1) converges only for c > a + b (a={a}, b={b}, c={c})"));
    }
    if is_nonpositive_integer(c) {
        return domain(format!("c = {c} is a pole of Γ(c)"));
    }
    if is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b) {
        return Ok(Hyp2F1AtOne {
            value: 0.0,
            denominator_pole: true,
        });
    }
    let (l1, s1) = ln_gamma_signed(c)?;
    let (l2, s2) = ln_gamma_signed(c - a - b)?;
    let (l3, s3) = ln_gamma_signed(c - a)?;
    let (l4, s4) = ln_gamma_signed(c - b)?;
    let value = s1 * s2 * s3 * s4 * (l1 + l2 - l3 - l4).exp();
    if is_nonpositive_integer(a) {
        let direct = hyp2f1_terminating(a, b, c)?;
        let scale = direct.abs().max(value.abs()).max(1e-300);
        if (direct - value).abs() > 1e-9 * scale.max(1.0) {
            return Err(Error::Consistency(format!(
                "Gauss sum {value} disagrees with terminating series {direct}"
            )));
        }
    }
    Ok(Hyp2F1AtOne {
        value,
        denominator_pole: false,
    })
}
