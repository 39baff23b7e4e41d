//! Phase-projected secular function.
//!
//! Writing `J̃_n(z) = 2^(1-d/2-n) z^n 0F1(; n+d/2; -z²/4) / Γ(n+d/2)` and
//! pulling `γ_j^k` out of each column and positive constants out of each row
//! turns `L(t, k)` into
//!
//! ```text
//! M_ij = (-1)^(i-1) u_j^(i-1) 0F1(; k+i-1+d/2; -γ_j²/4),   u_j = (γ_j/ρ)²,
//! ```
//!
//! which has the same zeros in `ρ > 0`, a constant phase factor, and a
//! non-vanishing limit at `ρ → 0`. Column `p` is further damped by
//! `exp(-Im γ_p)`, its exponential growth rate, to keep large-`ρ` values in
//! range.

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::complex_det;
use super::problem::ProblemSpec;
use super::scan::ScanConfig;
use crate::error::{domain, Error, Result};
use crate::specfun::{hyp0f1, ExtComplex, ExtReal, Z_MAX};

/// One evaluation of the secular function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SecularSample {
    pub rho: f64,
    /// Scaled determinant.
    pub det: Complex64,
    /// `Re(det · conj(u0))`.
    pub projected: f64,
    /// Estimated rounding noise on `det`.
    pub noise: f64,
}

/// `ρ ↦ Re(det M(ρ) · conj(u0))` for a fixed problem and angular degree.
#[derive(Clone, Debug)]
pub struct SecularFunction {
    pub spec: ProblemSpec,
    pub ell: u32,
    units: Vec<ExtComplex>,
    /// `Im(γ_p)/ρ`; column `p` is divided by `exp(ρ · growth[p])`.
    growth: Vec<f64>,
    params: Vec<f64>,
    phase: ExtComplex,
    phase_tol: f64,
    det_floor: f64,
}

/// Build the secular function for degree `ell`, fixing the phase reference at
/// the first healthy point of the scan grid.
pub fn secular(spec: ProblemSpec, ell: u32, cfg: &ScanConfig) -> Result<SecularFunction> {
    if !spec.admissible(ell) {
        return domain(format!("degree ell={ell} is not admissible for d=1"));
    }
    let t = spec.t;
    let k = spec.secular_index(ell);
    // u_p = e^(2πip/t), built so that conjugate pairs are exact conjugates;
    // the constant phase of the determinant rests on that symmetry
    let mut units = vec![ExtComplex::ONE; t as usize];
    for p in 1..t as usize {
        units[p] = if 2 * p == t as usize {
            -ExtComplex::ONE
        } else if 2 * p > t as usize {
            units[t as usize - p].conj()
        } else {
            let theta = 2.0 * p as f64 * std::f64::consts::PI / t as f64;
            ExtComplex::from_c64(Complex64::new(theta.cos(), theta.sin()))
        };
    }
    let growth = (0..t)
        .map(|p| (p as f64 * std::f64::consts::PI / t as f64).sin())
        .collect();
    let params = (0..t)
        .map(|i| (k + i) as f64 + spec.d as f64 / 2.0)
        .collect();
    let mut f = SecularFunction {
        spec,
        ell,
        units,
        growth,
        params,
        phase: ExtComplex::ONE,
        phase_tol: cfg.phase_tol,
        det_floor: cfg.det_floor,
    };
    let mut i = 0u64;
    loop {
        let rho = cfg.grid_point(i);
        if rho > cfg.rho_max {
            return Err(Error::Consistency(format!(
                "no scan point with a resolvable determinant for {spec}, ell={ell}"
            )));
        }
        let (det, noise) = f.scaled_det(rho)?;
        let a = det.abs_f64();
        if f.healthy(a, noise) {
            f.phase = det.div_f64(a);
            return Ok(f);
        }
        i += 1;
    }
}

impl SecularFunction {
    fn healthy(&self, modulus: f64, noise: f64) -> bool {
        modulus > self.det_floor && modulus * self.phase_tol > 10.0 * noise
    }

    /// Determinant of `M(ρ)` with column `p` divided by `exp(ρ Im(γ_p)/ρ)`,
    /// and an estimate of its rounding noise.
    pub fn scaled_det(&self, rho: f64) -> Result<(ExtComplex, f64)> {
        if !(rho > 0.0) || !rho.is_finite() {
            return domain(format!("rho must be positive, got {rho}"));
        }
        if rho > Z_MAX {
            return Err(Error::Range {
                what: "secular scan radius exceeds the series budget".into(),
                limit: Z_MAX,
                requested: rho,
            });
        }
        let t = self.spec.t as usize;
        let w0 = ExtReal::from_f64(rho).sqr().mul_f64(-0.25);
        let mut mat = vec![vec![ExtComplex::ZERO; t]; t];
        let mut rel_noise = 1e-30;
        let mut hadamard = 1.0f64;
        for j in 0..t {
            let u = self.units[j];
            let w = u.scale(w0);
            let damp = (-rho * self.growth[j]).exp();
            let mut col_noise = 0.0f64;
            let mut upow = ExtComplex::ONE;
            for i in 0..t {
                let s = hyp0f1(self.params[i], w)?;
                let mut v = (s.value * upow).scale_f64(damp);
                if i % 2 == 1 {
                    v = -v;
                }
                mat[i][j] = v;
                col_noise += s.noise() * damp;
                upow = upow * u;
            }
            let norm = (0..t).map(|i| mat[i][j].abs_f64().powi(2)).sum::<f64>().sqrt();
            if norm > 0.0 {
                rel_noise += col_noise / norm;
                hadamard *= norm;
            }
        }
        let det = complex_det(&mat);
        // first-order perturbation of the determinant, Hadamard-bounded
        Ok((det, rel_noise * hadamard * t as f64))
    }

    /// Evaluate the projected value, asserting that the determinant stays on
    /// its reference ray.
    pub fn sample(&self, rho: f64) -> Result<SecularSample> {
        let (det, noise) = self.scaled_det(rho)?;
        let p = det * self.phase.conj();
        let modulus = det.abs_f64();
        let im = p.im.to_f64();
        if self.healthy(modulus, noise) && im.abs() > self.phase_tol * modulus {
            return Err(Error::Consistency(format!(
                "secular determinant left its phase ray at rho={rho} for {}, ell={} \
                 (|Im|/|det| = {:.3e})",
                self.spec,
                self.ell,
                im.abs() / modulus
            )));
        }
        Ok(SecularSample {
            rho,
            det: det.to_c64(),
            projected: p.re.to_f64(),
            noise,
        })
    }

    /// `(projected value, |det|)` at `ρ`.
    pub fn eval(&self, rho: f64) -> Result<(f64, f64)> {
        let s = self.sample(rho)?;
        Ok((s.projected, s.det.norm()))
    }
}
