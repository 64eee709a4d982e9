//! Heat content Q(t) with singular boundary data on model domains.
//!
//! The library evaluates the heat content of the interval, the half-line
//! and the ball in R^3 for data of the form chi(delta) delta^{-alpha}
//! (delta the boundary distance, alpha < 2), computes the closed-form
//! coefficients of the small-t expansion, and verifies the expansion by
//! fitting sampled Q(t) against the predicted exponent series.
//!
//! Modules:
//! - [`special`]: Gamma, the boundary coefficient c_{a1,a2} with analytic
//!   continuation, ball constants, and the log-case q-integral.
//! - [`kernels`]: exact Dirichlet heat kernels on the 1-D model domains.
//! - [`quad`]: tanh-sinh quadrature aware of endpoint singularities.
//! - [`heat`]: the Q(t) evaluators and t-grid driver.
//! - [`invariants`]: the epsilon-constant table, beta_0..beta_2 boundary
//!   invariants, and the linear-relation solver.
//! - [`fit`]: series templates and least-squares coefficient extraction.
//! - [`verify`]: the runnable verification suite.

// frozen oracle constants keep their full printed precision, and numeric
// validation uses NaN-rejecting negated comparisons on purpose
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod fit;
pub mod heat;
pub mod invariants;
pub mod kernels;
pub mod linalg;
pub mod quad;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use exec::ExecMode;
pub use fit::{
    build_log_template, build_template, compare, fit_series, template_from_exponents, FitResult,
    PredictedCoeff, SeriesTemplate,
};
pub use heat::{
    bump_cutoff, log_grid, q_ball, q_grid, q_grid_with_mode, q_halfline, q_interval,
    CutoffFunction, QConfig, QSample,
};
pub use invariants::{
    ball_geometry, beta_boundary, epsilon_table, interval_geometry, solve_epsilon, BetaTriple,
    BoundaryGeometry, EpsilonTable,
};
pub use kernels::{image_count, kernel, Domain1D, ImageCount, KernelEval};
pub use quad::{de_rule, integrate_1d, integrate_2d, Estimate, QuadPoint, QuadratureRule};
pub use special::{
    ball_b_coeffs, c_at, c_coef, c_coef_direct, gamma_fn, log_case_constant, q_integral,
    AlphaPair, BallCoeffs,
};
