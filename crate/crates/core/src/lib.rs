//! Exact coefficient calculus for the boundary asymptotics of analytic
//! torsion under one-parameter degenerations, plus the numeric machinery
//! (asymptotic fitting, Barlet–Takayama matrix models, curvature checks,
//! flat-torus determinants) used to validate it.

pub mod asymptotics;
pub mod chern;
pub mod elliptic;
pub mod error;
pub mod exact;
pub mod hodge;
pub mod kappa;
pub mod numeric;
pub mod rat;
pub mod series;
pub mod singularity;

pub use error::{Error, Result};
pub use rat::Rat;
