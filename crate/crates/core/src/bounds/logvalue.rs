use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::specfun::ln_bigint_abs;

/// A real number stored as `sign · exp(ln_mag)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogValue {
    pub sign: i8,
    pub ln_mag: f64,
}

/// Largest magnitude printed as a plain number; beyond it only the log is
/// reported.
pub const PLAIN_LIMIT: f64 = 9_007_199_254_740_992.0;

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: 0,
        ln_mag: f64::NEG_INFINITY,
    };
    pub const ONE: LogValue = LogValue {
        sign: 1,
        ln_mag: 0.0,
    };

    pub fn from_ln(ln_mag: f64) -> Self {
        LogValue { sign: 1, ln_mag }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            LogValue::ZERO
        } else {
            LogValue {
                sign: if x > 0.0 { 1 } else { -1 },
                ln_mag: x.abs().ln(),
            }
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        if n.is_zero() {
            return LogValue::ZERO;
        }
        LogValue {
            sign: if n.is_negative() { -1 } else { 1 },
            ln_mag: ln_bigint_abs(n),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        if q.is_zero() {
            return LogValue::ZERO;
        }
        LogValue {
            sign: if q.is_negative() { -1 } else { 1 },
            ln_mag: ln_bigint_abs(q.numer()) - ln_bigint_abs(q.denom()),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.ln_mag.exp(),
        }
    }

    /// The value as a plain float, or `None` when its magnitude is at least
    /// [`PLAIN_LIMIT`].
    pub fn plain(self) -> Option<f64> {
        let v = self.to_f64();
        (v.abs() < PLAIN_LIMIT).then_some(v)
    }

    /// `|x|^p` for a positive value; `p = 1/(2t)` gives normalised bounds.
    pub fn powf(self, p: f64) -> Self {
        match self.sign {
            0 => LogValue::ZERO,
            _ => LogValue::from_ln(self.ln_mag * p),
        }
    }

    pub fn recip(self) -> Self {
        LogValue {
            sign: self.sign,
            ln_mag: -self.ln_mag,
        }
    }

    /// Sum of two values, computed without leaving log space.
    pub fn add(self, other: LogValue) -> Self {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.ln_mag >= other.ln_mag {
            (self, other)
        } else {
            (other, self)
        };
        let r = (small.ln_mag - big.ln_mag).exp();
        if big.sign == small.sign {
            LogValue {
                sign: big.sign,
                ln_mag: big.ln_mag + r.ln_1p(),
            }
        } else if r == 1.0 {
            LogValue::ZERO
        } else {
            LogValue {
                sign: big.sign,
                ln_mag: big.ln_mag + (-r).ln_1p(),
            }
        }
    }

    /// `ln(self) - ln(other)` for two positive values.
    pub fn log_ratio(self, other: LogValue) -> f64 {
        self.ln_mag - other.ln_mag
    }

    /// Ordering of positive values, `true` when `self <= other` up to a
    /// relative slack `rtol`.
    pub fn le_rel(self, other: LogValue, rtol: f64) -> bool {
        match (self.sign, other.sign) {
            (0, s) => s >= 0,
            (1, 1) => self.ln_mag <= other.ln_mag + rtol.ln_1p(),
            (-1, -1) => other.ln_mag <= self.ln_mag + rtol.ln_1p(),
            (a, b) => a < b,
        }
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 || rhs.sign == 0 {
            return LogValue::ZERO;
        }
        LogValue {
            sign: self.sign * rhs.sign,
            ln_mag: self.ln_mag + rhs.ln_mag,
        }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        self * rhs.recip()
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.plain() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}exp({})", if self.sign < 0 { "-" } else { "" }, self.ln_mag),
        }
    }
}
