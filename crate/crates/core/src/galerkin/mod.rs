//! Rayleigh–Ritz oracle with exact rational forms.
//!
//! Bases are polynomials carrying `(1-x²)^m` (per coordinate) or `(1-r²)^m`,
//! so the Dirichlet conditions hold exactly. The forms `∫ D^p u : D^p v` are
//! assembled in rationals and the eigenproblem is reduced exactly before any
//! rounding (see [`eig`]).

pub mod basis;
pub mod checks;
pub mod eig;
pub mod rational;

pub use basis::{box_forms, interval_forms, radial_forms, Forms, GalerkinBasis, Geometry};
pub use checks::{
    cauchy_schwarz_holds, cauchy_schwarz_violation, clamped_beam_reference, clamped_beam_root,
    gn_check, gn_margin, BeamRoot, Lcg, GN_SEED,
};
pub use eig::{gen_sym_eig, jacobi_eigenvalues};
pub use rational::{rational_to_ext, RationalMatrix};
