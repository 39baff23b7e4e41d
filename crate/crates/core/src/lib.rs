//! Dirichlet eigenvalues of the polyharmonic problem
//! `(-Δ)^m u = λ (-Δ)^(m-t) u` on balls, intervals and hyperrectangles.
//!
//! The crate is organised by capability:
//!
//! - [`specfun`]: Gamma, double factorials, real and complex Bessel series
//!   evaluated in double-double arithmetic, Bessel zeros.
//! - [`ball`]: the secular determinant on the unit ball, root scanning and
//!   spectrum assembly with spherical-harmonic multiplicities, plus the exact
//!   determinant identities behind the factorisation.
//! - [`bounds`]: closed-form upper and lower bounds, exact integrals and
//!   asymptotic expansions, all in log space.
//! - [`galerkin`]: exact-rational Rayleigh–Ritz discretisations used as an
//!   independent oracle.
//! - [`verify`]: inequality checks over computed spectra with pass/fail
//!   reports.
//! - [`cli`]: the command-line front end (`spectrum`, `bounds`, `verify`,
//!   `oracle`).

pub mod ball;
pub mod bounds;
pub mod cli;
mod error;
pub mod galerkin;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
