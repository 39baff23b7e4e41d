//! Bessel functions of the first kind.
//!
//! Everything near the origin goes through one routine, [`hyp0f1`], which sums
//! `Σ w^k / (k! (a)_k)` in double-double arithmetic. Real `J_κ(x)` switches
//! to Miller's backward recurrence once `x` exceeds [`SERIES_X`], where the
//! ascending series starts to lose digits faster than is comfortable.

use num_complex::Complex64;

use super::ext::{ExtComplex, ExtReal};
use super::gamma::ln_gamma_signed;
use crate::error::{domain, Error, Result};

/// Largest `|z|` accepted by the complex series evaluators. The ascending
/// series loses about `|z| log10(e)` digits, so at 55 roughly nine digits
/// survive out of the ~32 carried by [`ExtReal`].
pub const Z_MAX: f64 = 55.0;

/// Largest real argument accepted by [`bessel_j`].
pub const REAL_X_MAX: f64 = 500.0;

/// Above this argument the real evaluator uses backward recurrence.
const SERIES_X: f64 = 25.0;

/// Relative rounding noise of a double-double series, per unit of the sum of
/// absolute terms.
const SERIES_NOISE: f64 = 1e-31;

const MAX_TERMS: usize = 4000;

/// A series sum together with the sum of the moduli of its terms.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: ExtComplex,
    pub abs_sum: f64,
}

impl SeriesValue {
    /// Estimated absolute rounding error of `value`.
    pub fn noise(&self) -> f64 {
        self.abs_sum * SERIES_NOISE
    }
}

fn check_pochhammer_base(a: f64) -> Result<()> {
    if !a.is_finite() || (a <= 0.0 && a == a.trunc()) {
        return domain(format!("0F1 parameter {a} is a non-positive integer"));
    }
    Ok(())
}

/// `Σ_k c_k w^k / (k! (a)_k)` with `c_k = weight(k)`.
fn weighted_0f1(a: f64, w: ExtComplex, weight: impl Fn(usize) -> ExtReal) -> Result<SeriesValue> {
    check_pochhammer_base(a)?;
    let wabs = w.abs_f64();
    let mut v = ExtComplex::ONE;
    let mut sum = ExtComplex::ZERO;
    let mut abs_sum = 0.0;
    // leading weights may vanish exactly; test convergence only after them
    let mut first = None;
    for k in 0..MAX_TERMS {
        let wk = weight(k);
        if first.is_none() && wk.to_f64() != 0.0 {
            first = Some(k);
        }
        let term = v.scale(wk);
        sum += term;
        let ta = term.abs_f64();
        abs_sum += ta;
        let kf = k as f64;
        let denom = (kf + 1.0) * (a + kf);
        if denom.abs() > 2.0 * wabs && first.is_some_and(|f| k > f + 2) {
            let sa = sum.abs_f64().max(f64::MIN_POSITIVE);
            if ta <= 1e-34 * sa.max(abs_sum * 1e-3) || v.is_zero() {
                return Ok(SeriesValue {
                    value: sum,
                    abs_sum,
                });
            }
        }
        v = (v * w).div_f64(denom);
    }
    Err(Error::Numeric(format!(
        "0F1 series with a={a}, |w|={wabs} did not converge in {MAX_TERMS} terms"
    )))
}

/// Confluent limit series `0F1(; a; w) = Σ w^k / (k! (a)_k)` in double-double.
pub fn hyp0f1(a: f64, w: ExtComplex) -> Result<SeriesValue> {
    weighted_0f1(a, w, |_| ExtReal::ONE)
}

fn ensure_z(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return domain("complex argument must be finite");
    }
    let r = z.norm();
    if r > Z_MAX {
        return Err(Error::Range {
            what: "|z| exceeds the double-double series budget".into(),
            limit: Z_MAX,
            requested: r,
        });
    }
    Ok(())
}

/// `2^(1-d/2-ℓ) / Γ(ℓ+d/2)`, the leading coefficient of `J̃_ℓ`.
fn jtilde_lead(ell: u32, d: u32) -> Result<f64> {
    let a = ell as f64 + d as f64 / 2.0;
    let (lg, s) = ln_gamma_signed(a)?;
    Ok(s * ((1.0 - a) * std::f64::consts::LN_2 - lg).exp())
}

fn check_dim(d: u32) -> Result<()> {
    if d == 0 {
        return domain("dimension must be at least 1");
    }
    Ok(())
}

/// `J̃_ℓ(z) = z^(1-d/2) J_(ℓ+d/2-1)(z)`, evaluated as the entire power series
/// `2^(1-d/2-ℓ) z^ℓ Σ (-1)^k (z/2)^(2k) / (k! Γ(ℓ+d/2+k))`.
pub fn jtilde(ell: u32, d: u32, z: Complex64) -> Result<Complex64> {
    jtilde_deriv(ell, d, 0, z)
}

fn falling(p: u64, i: u32) -> ExtReal {
    if (p as i64) < i as i64 {
        return ExtReal::ZERO;
    }
    let mut acc = ExtReal::ONE;
    for q in 0..i as u64 {
        acc = acc.mul_f64((p - q) as f64);
    }
    acc
}

/// `i`-th derivative of `J̃_ℓ` at `z` in double-double, without the leading
/// constant `2^(1-d/2-ℓ)/Γ(ℓ+d/2)`. The series noise is scaled consistently.
pub fn jtilde_deriv_series(ell: u32, d: u32, i: u32, z: Complex64) -> Result<SeriesValue> {
    check_dim(d)?;
    ensure_z(z)?;
    let a = ell as f64 + d as f64 / 2.0;
    let ze = ExtComplex::from_c64(z);
    if ze.is_zero() {
        // only the z^i monomial survives
        if i >= ell && (i - ell) % 2 == 0 {
            let k = (i - ell) / 2;
            let mut c = falling(i as u64, i);
            for j in 0..k {
                c = c.div_f64(-4.0 * (j as f64 + 1.0) * (a + j as f64));
            }
            return Ok(SeriesValue {
                value: ExtComplex::from_real(c),
                abs_sum: c.abs().to_f64(),
            });
        }
        return Ok(SeriesValue {
            value: ExtComplex::ZERO,
            abs_sum: 0.0,
        });
    }
    let w = ze.sqr().scale_f64(-0.25);
    let s = weighted_0f1(a, w, |k| falling(ell as u64 + 2 * k as u64, i))?;
    let (value, factor) = if ell >= i {
        let p = ze.powu(ell - i);
        (s.value * p, p.abs_f64())
    } else {
        let p = ze.powu(i - ell);
        (s.value / p, 1.0 / p.abs_f64())
    };
    Ok(SeriesValue {
        value,
        abs_sum: s.abs_sum * factor,
    })
}

/// `i`-th derivative of `J̃_ℓ` at `z`, by term-wise differentiation of the
/// power series.
pub fn jtilde_deriv(ell: u32, d: u32, i: u32, z: Complex64) -> Result<Complex64> {
    let s = jtilde_deriv_series(ell, d, i, z)?;
    Ok(s.value.to_c64() * jtilde_lead(ell, d)?)
}

fn is_integer(x: f64) -> bool {
    x == x.trunc()
}

/// Bessel function of the first kind `J_κ(x)` for real order and `x >= 0`.
///
/// Negative integer orders use `J_(-n) = (-1)^n J_n`; other negative orders
/// are summed directly from the defining series.
pub fn bessel_j(kappa: f64, x: f64) -> Result<f64> {
    if !kappa.is_finite() || !x.is_finite() || x < 0.0 {
        return domain(format!("bessel_j needs finite order and x >= 0 (κ={kappa}, x={x})"));
    }
    if x > REAL_X_MAX {
        return Err(Error::Range {
            what: "bessel_j argument".into(),
            limit: REAL_X_MAX,
            requested: x,
        });
    }
    if kappa < 0.0 && is_integer(kappa) {
        let n = -kappa;
        let s = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(s * bessel_j(n, x)?);
    }
    if x == 0.0 {
        return if kappa == 0.0 {
            Ok(1.0)
        } else if kappa > 0.0 {
            Ok(0.0)
        } else {
            domain(format!("J_{kappa} is singular at the origin"))
        };
    }
    if x <= SERIES_X {
        let a = kappa + 1.0;
        let s = hyp0f1(a, ExtComplex::from_real(ExtReal::from_f64(x).sqr().mul_f64(-0.25)))?;
        let (lg, sg) = ln_gamma_signed(a)?;
        let lead = sg * (kappa * (0.5 * x).ln() - lg).exp();
        return Ok(lead * s.value.re.to_f64());
    }
    Ok(miller(kappa, x))
}

/// Backward recurrence normalised with
/// `(x/2)^ν = Σ_k (ν+2k) Γ(ν+k)/k! J_(ν+2k)(x)`, `ν ∈ [0, 1)`.
fn miller(kappa: f64, x: f64) -> f64 {
    let j = kappa.floor();
    let nu = kappa - j;
    let j = j as i64;
    let top = x.max(j as f64).ceil() as usize + 30 + 12 * x.cbrt().ceil() as usize;
    let n_max = top + top % 2;
    let mut f = vec![0.0f64; n_max + 2];
    f[n_max] = 1e-30;
    for n in (1..=n_max).rev() {
        f[n - 1] = 2.0 * (nu + n as f64) / x * f[n] - f[n + 1];
        if f[n - 1].abs() > 1e200 {
            for v in f.iter_mut().skip(n - 1) {
                *v *= 1e-200;
            }
        }
    }
    // normalisation sum, k = 0 coefficient is Γ(ν+1)
    let g1 = ln_gamma_signed(nu + 1.0).map(|(l, _)| l.exp()).unwrap_or(1.0);
    let mut norm = g1 * f[0];
    let mut r = g1; // Γ(ν+k)/k! at k = 1
    for k in 1..=n_max / 2 {
        if k > 1 {
            r *= (nu + k as f64 - 1.0) / k as f64;
        }
        norm += (nu + 2.0 * k as f64) * r * f[2 * k];
    }
    let scale = (0.5 * x).powf(nu) / norm;
    if j >= 0 {
        return f[j as usize] * scale;
    }
    let mut hi = f[1] * scale;
    let mut cur = f[0] * scale;
    let mut order = nu;
    for _ in 0..(-j) {
        let next = 2.0 * order / x * cur - hi;
        hi = cur;
        cur = next;
        order -= 1.0;
    }
    cur
}

/// Derivative `J_κ'(x) = (κ/x) J_κ(x) - J_(κ+1)(x)`.
fn bessel_j_prime(kappa: f64, x: f64) -> Result<f64> {
    Ok(kappa / x * bessel_j(kappa, x)? - bessel_j(kappa + 1.0, x)?)
}

/// `k`-th positive zero `j_(κ,k)` of `J_κ`, `κ >= -1`.
///
/// For `κ = -1` the zeros of `J_1` are returned (the two functions differ only
/// by sign).
pub fn bessel_j_zero(kappa: f64, k: u32) -> Result<f64> {
    if !kappa.is_finite() || kappa < -1.0 {
        return domain(format!("bessel zeros need κ >= -1, got {kappa}"));
    }
    if k == 0 {
        return domain("zero index starts at 1");
    }
    let kappa = if kappa == -1.0 { 1.0 } else { kappa };
    let start = if kappa > 0.0 {
        (kappa * (kappa + 2.0)).sqrt()
    } else {
        1e-6
    };
    let step = 0.5;
    let mut a = start;
    let mut fa = bessel_j(kappa, a)?;
    let mut count = 0;
    let mut i = 1u32;
    let (lo, hi, flo) = loop {
        let b = start + step * i as f64;
        if b > REAL_X_MAX {
            return Err(Error::Range {
                what: format!("zero {k} of J_{kappa}"),
                limit: REAL_X_MAX,
                requested: b,
            });
        }
        let fb = bessel_j(kappa, b)?;
        if fb == 0.0 {
            count += 1;
            if count == k {
                return Ok(b);
            }
        } else if fa != 0.0 && fa.signum() != fb.signum() {
            count += 1;
            if count == k {
                break (a, b, fa);
            }
        }
        a = b;
        fa = fb;
        i += 1;
    };
    polish_zero(kappa, k, lo, hi, flo)
}

fn polish_zero(kappa: f64, k: u32, mut lo: f64, mut hi: f64, flo: f64) -> Result<f64> {
    let beta = (k as f64 + kappa / 2.0 - 0.25) * std::f64::consts::PI;
    let mcmahon = beta - (4.0 * kappa * kappa - 1.0) / (8.0 * beta);
    let mut x = if mcmahon > lo && mcmahon < hi {
        mcmahon
    } else {
        0.5 * (lo + hi)
    };
    let slo = flo.signum();
    for _ in 0..200 {
        let fx = bessel_j(kappa, x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == slo {
            lo = x;
        } else {
            hi = x;
        }
        let dfx = bessel_j_prime(kappa, x)?;
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 1e-15 * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Numeric(format!("zero {k} of J_{kappa} did not converge in 200 iterations")))
}
