//! `ssdlab` — the SSD gamma-mixture lifetime distribution and a model
//! comparison toolkit around it.
//!
//! The SSD distribution mixes gamma(2, θ) with gamma(α+2, θ) under the
//! normalizing weight p = θ^α/(θ^α + Γ(α+2)). This crate provides:
//!
//! - every analytical property of the distribution (density, distribution
//!   and survival functions, hazard, mean residual life, moments, MGF and
//!   characteristic function, Rényi entropy, Lorenz/Bonferroni curves,
//!   order statistics, TTT transform) plus a numeric quantile and a seeded
//!   sampler — [`ssd`];
//! - maximum-likelihood fitting by integer-α profile search and damped
//!   two-dimensional Newton–Raphson on the analytic score — [`fit`];
//! - six classical baseline lifetime models behind one interface — [`baselines`];
//! - goodness-of-fit statistics (exact one-sample Kolmogorov–Smirnov,
//!   AIC/BIC/AICc) and ranked model-comparison reports — [`gof`];
//! - the special functions and adaptive quadrature everything above rests
//!   on — [`specfun`], [`numeric`].

pub mod baselines;
pub mod dataset;
pub mod error;
pub mod fit;
pub mod gof;
pub mod numeric;
pub mod specfun;
pub mod ssd;

pub use dataset::Dataset;
pub use error::{Error, Result};
pub use ssd::{CurveSeries, SsdParams};
