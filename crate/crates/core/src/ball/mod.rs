//! Eigenvalues of the polyharmonic problem on the unit ball.
//!
//! Separating variables gives radial factors built from `J̃_ℓ(γ_p r)` and
//! the polynomials `r^(ℓ+2p)`. Eigenvalues are the roots in `ρ = λ^(1/(2t))`
//! of `det L(t, ℓ+m-t)`, see [`secular`] and [`scan`]; [`spectrum`] merges the
//! angular degrees with their multiplicities. [`identities`] holds the exact
//! integer identities behind the factorisation of the full boundary matrix.

pub mod identities;
pub mod matrix;
pub mod problem;
pub mod scan;
pub mod secular;
pub mod spectrum;

pub use identities::{alpha_coeff, build_b, det_a_factor_check, det_b_check};
pub use matrix::{build_l, complex_det, gamma_points, DetScalar};
pub use problem::ProblemSpec;
pub use scan::{brent, eigenvalues_for_ell, scan_ell, EllRoots, ScanConfig};
pub use secular::{secular, SecularFunction, SecularSample};
pub use spectrum::{
    assemble_spectrum, assemble_spectrum_auto, default_rho_max, spherical_multiplicity, Spectrum,
    SpectrumEntry,
};
