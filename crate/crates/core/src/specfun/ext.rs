//! Double-double ("ExtReal") arithmetic and its complex counterpart.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`,
//! giving roughly 32 significant decimal digits. Products use Dekker
//! splitting so that no hardware FMA is required.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Unit roundoff of the double-double format (2^-104).
pub const EXT_EPSILON: f64 = 4.930380657631324e-32;

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

/// Double-double real number.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ExtReal {
    pub hi: f64,
    pub lo: f64,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal { hi: 0.0, lo: 0.0 };
    pub const ONE: ExtReal = ExtReal { hi: 1.0, lo: 0.0 };
    pub const PI: ExtReal = ExtReal {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        ExtReal { hi: x, lo: 0.0 }
    }

    /// Renormalises an arbitrary pair.
    #[inline]
    pub fn from_pair(hi: f64, lo: f64) -> Self {
        let (s, e) = two_sum(hi, lo);
        ExtReal { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (s, e) = quick_two_sum(p, e);
        ExtReal { hi: s, lo: e }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, f) = two_sum(self.hi, -p);
        let f = f - e + self.lo;
        let q2 = (s + f) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        ExtReal { hi, lo }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                ExtReal::ZERO
            } else {
                ExtReal::from_f64(f64::NAN)
            };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let diff = self - ExtReal::from_f64(ax).sqr();
        let (hi, lo) = two_sum(ax, diff.hi * x * 0.5);
        ExtReal { hi, lo }
    }

    pub fn recip(self) -> Self {
        ExtReal::ONE / self
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = ExtReal::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::from_f64(x)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn neg(self) -> Self {
        ExtReal {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        ExtReal { hi, lo }
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        ExtReal { hi, lo }
    }
}

impl Div for ExtReal {
    type Output = ExtReal;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        ExtReal { hi, lo } + ExtReal::from_f64(q3)
    }
}

impl AddAssign for ExtReal {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl SubAssign for ExtReal {
    fn sub_assign(&mut self, b: Self) {
        *self = *self - b;
    }
}

impl MulAssign for ExtReal {
    fn mul_assign(&mut self, b: Self) {
        *self = *self * b;
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ExtComplex {
    pub re: ExtReal,
    pub im: ExtReal,
}

impl ExtComplex {
    pub const ZERO: ExtComplex = ExtComplex {
        re: ExtReal::ZERO,
        im: ExtReal::ZERO,
    };
    pub const ONE: ExtComplex = ExtComplex {
        re: ExtReal::ONE,
        im: ExtReal::ZERO,
    };

    pub fn new(re: ExtReal, im: ExtReal) -> Self {
        ExtComplex { re, im }
    }

    pub fn from_real(re: ExtReal) -> Self {
        ExtComplex {
            re,
            im: ExtReal::ZERO,
        }
    }

    pub fn from_c64(z: Complex64) -> Self {
        ExtComplex {
            re: ExtReal::from_f64(z.re),
            im: ExtReal::from_f64(z.im),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(self) -> Self {
        ExtComplex {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm_sqr(self) -> ExtReal {
        self.re.sqr() + self.im.sqr()
    }

    /// Modulus in plain precision; used for pivoting and scaling.
    pub fn abs_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn scale(self, s: ExtReal) -> Self {
        ExtComplex {
            re: self.re * s,
            im: self.im * s,
        }
    }

    pub fn scale_f64(self, s: f64) -> Self {
        ExtComplex {
            re: self.re.mul_f64(s),
            im: self.im.mul_f64(s),
        }
    }

    pub fn div_real(self, s: ExtReal) -> Self {
        ExtComplex {
            re: self.re / s,
            im: self.im / s,
        }
    }

    pub fn div_f64(self, s: f64) -> Self {
        ExtComplex {
            re: self.re.div_f64(s),
            im: self.im.div_f64(s),
        }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn powu(self, n: u32) -> Self {
        let mut base = self;
        let mut e = n;
        let mut acc = ExtComplex::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(self) -> bool {
        self.re.hi == 0.0 && self.im.hi == 0.0
    }
}

impl Neg for ExtComplex {
    type Output = ExtComplex;
    fn neg(self) -> Self {
        ExtComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for ExtComplex {
    type Output = ExtComplex;
    fn add(self, b: Self) -> Self {
        ExtComplex {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for ExtComplex {
    type Output = ExtComplex;
    fn sub(self, b: Self) -> Self {
        ExtComplex {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for ExtComplex {
    type Output = ExtComplex;
    fn mul(self, b: Self) -> Self {
        ExtComplex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for ExtComplex {
    type Output = ExtComplex;
    fn div(self, b: Self) -> Self {
        let den = b.norm_sqr();
        (self * b.conj()).div_real(den)
    }
}

impl AddAssign for ExtComplex {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl MulAssign for ExtComplex {
    fn mul_assign(&mut self, b: Self) {
        *self = *self * b;
    }
}
