//! Analysis of the first-order rational map
//! `phi(x) = (a x^3 + b x^2 + c x + d) / x^3` on the positive half-line.
//!
//! The crate computes the parameter thresholds that organize the map's
//! dynamics, finds equilibria and period-two cycles by deterministic
//! real-root isolation, classifies the convergence regime, predicts the
//! asymptotic fate of initial conditions, and cross-validates those
//! predictions against direct simulation.
//!
//! Modules, bottom up:
//!
//! - [`polyroot`]: Sturm-sequence root isolation and bisection/Newton
//!   refinement for polynomials of degree <= 6.
//! - [`model`]: the map itself — evaluation, derivative, second
//!   iterate, critical points.
//! - [`thresholds`]: the critical parameter values `c_minus`, `c_star`,
//!   `c1_star`, `c_b`, and the fold values where the equilibrium count
//!   changes.
//! - [`structures`]: equilibria, 2-cycles, and the auxiliary quantities
//!   (invariant interval, preimages) behind the convergence theorems.
//! - [`dynamics`]: orbit simulation, regime classification, fate
//!   prediction, and prediction-vs-simulation cross-validation.
//! - [`report`]: per-parameter analysis records and c-sweep tables.
//! - [`verify`]: the embedded golden suite of published example values.

pub mod dynamics;
pub mod model;
pub mod polyroot;
pub mod report;
pub mod structures;
pub mod thresholds;
pub mod verify;

pub use dynamics::{Fate, FatePrediction, OrbitResult, Regime};
pub use model::{Extrema, Params};
pub use polyroot::Poly;
pub use report::AnalysisReport;
pub use structures::{Equilibrium, Stability, TwoCycle};
pub use thresholds::Thresholds;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// The numbers contradict a structural guarantee (wrong root count,
    /// unpairable cycle root, ...). Signals a numeric failure, not math.
    #[error("numeric failure: {0}")]
    NumericFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
