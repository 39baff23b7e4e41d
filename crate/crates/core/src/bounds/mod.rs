//! Closed-form bounds, exact integrals on the ball and asymptotic expansions.
//!
//! Values grow like `(2m/e)^(2m)`, so results are carried as [`LogValue`]s.
//! The ball formulas are evaluated exactly first (see [`exact`]).

pub mod ball;
pub mod domains;
pub mod exact;
pub mod logvalue;

pub use ball::{
    ball_bounds, dirichlet_lower, dirichlet_upper, erve_bound, log_gap, lower_asymptotic_residual,
    navier_reference, product_lower_and_bessel_upper, product_lower_direct, remainder_bracket,
    two_term_asymptotic, upper_asymptotic_residual, upper_mt, BoundsReport, ProductBounds,
};
pub use domains::{
    enclosure_with_ball_interval, general_domain_enclosure, hyperrectangle_lower, weyl_leading,
};
pub use exact::{
    ball_volume, beta_moment, gamma_half, grad_t_norm_ball, grad_t_norm_ball_exact,
    radial_iterated_laplacian, sigma_aux, sigma_aux_exact, sphere_area, PiRational,
};
pub use logvalue::{LogValue, PLAIN_LIMIT};
