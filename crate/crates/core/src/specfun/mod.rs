//! Special functions: Gamma and friends, real Bessel `J_κ` with its zeros, and
//! the entire kernel `J̃_ℓ(z) = z^(1-d/2) J_(ℓ+d/2-1)(z)` at complex argument.

mod bessel;
mod ext;
mod gamma;

pub use bessel::{
    bessel_j, bessel_j_zero, hyp0f1, jtilde, jtilde_deriv, jtilde_deriv_series, SeriesValue,
    REAL_X_MAX, Z_MAX,
};
pub use ext::{ExtComplex, ExtReal, EXT_EPSILON};
pub use gamma::{
    double_factorial, factorial, gamma, hyp2f1_at_one, hyp2f1_terminating, ln_bigint_abs,
    ln_biguint, ln_gamma, ln_gamma_signed, pochhammer, stirling_ln_gamma, Hyp2F1AtOne,
};

/// Complex values exchanged across module boundaries.
pub type ComplexVal = num_complex::Complex64;
