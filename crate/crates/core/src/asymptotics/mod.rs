//! The four-parameter model
//! `κ log r² − ϱ log log r^{−2} + γ + c / log r^{−1}`,
//! its least-squares fit, and the matrix and curvature checks built on it.
//!
//! Internally every radius is carried as `L = log r^{−1} > 0`; radii of
//! degenerating families quickly fall below the smallest positive `f64`.

pub mod bt;
pub mod curvature;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::least_squares;

pub use bt::{bt_det, bt_det_fit, bt_eval, bt_rho, compose_with_d, dh_decompose, BTExpansion, BtDetFit, DhReport};
pub use curvature::{curvature_check, CurvaturePoint, CurvatureReport, GTerm};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AsymModel {
    pub kappa: f64,
    pub rho: f64,
    pub gamma: f64,
    #[serde(default)]
    pub c: f64,
}

impl AsymModel {
    pub fn new(kappa: f64, rho: f64, gamma: f64, c: f64) -> Result<Self> {
        if ![kappa, rho, gamma, c].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("non-finite model coefficient".into()));
        }
        Ok(AsymModel { kappa, rho, gamma, c })
    }

    /// Value at `L = log r^{−1}`.
    pub fn eval_log(&self, l: f64) -> f64 {
        let terms = basis(l);
        self.kappa * terms[0] + self.rho * terms[1] + self.gamma * terms[2] + self.c * terms[3]
    }
}

/// `[log r², −log log r^{−2}, 1, 1/log r^{−1}]` in terms of `L`.
fn basis(l: f64) -> [f64; 4] {
    [-2.0 * l, -(2.0 * l).ln(), 1.0, 1.0 / l]
}

/// Accepts `r ∈ (0, 1)`; `log log r^{−2}` is real there.
pub fn model_eval(m: &AsymModel, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r = {r} outside (0, 1)")));
    }
    Ok(m.eval_log(-r.ln()))
}

/// A sample `(r, value)`, stored as `(log r^{−1}, value)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    log_inv_r: f64,
    pub value: f64,
}

impl Sample {
    pub fn from_r(r: f64, value: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain(format!("r = {r} outside (0, 1)")));
        }
        Self::from_log_inv_r(-r.ln(), value)
    }

    pub fn from_log_inv_r(l: f64, value: f64) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::Domain(format!("log(1/r) = {l} must be positive")));
        }
        if !value.is_finite() {
            return Err(Error::Domain("non-finite sample value".into()));
        }
        Ok(Sample { log_inv_r: l, value })
    }

    pub fn log_inv_r(&self) -> f64 {
        self.log_inv_r
    }

    /// `r` itself; underflows to 0 once `L > ~745`.
    pub fn r(&self) -> f64 {
        (-self.log_inv_r).exp()
    }
}

/// Writes `r = e^{−L}` in scientific notation without passing through `f64`,
/// e.g. `1.2345e-546`.
pub fn format_r(l: f64) -> String {
    let log10 = -l / std::f64::consts::LN_10;
    let mut exp = log10.floor();
    let mut mant = 10f64.powf(log10 - exp);
    if mant >= 9.999_999_999_999_999_5 {
        mant /= 10.0;
        exp += 1.0;
    }
    format!("{mant:.17}e{}", exp as i64)
}

/// Parses a radius written as a decimal or in scientific notation and
/// returns `L = log r^{−1}`; exponents beyond the `f64` range are fine.
pub fn parse_r(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad radius {s:?}"));
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let m: f64 = mant.parse().map_err(|_| bad())?;
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::Domain(format!("radius {s} must be positive")));
    }
    let l = -(m.ln() + exp as f64 * std::f64::consts::LN_10);
    if !(l > 0.0) {
        return Err(Error::Domain(format!("radius {s} outside (0, 1)")));
    }
    Ok(l)
}

pub const DEFAULT_RHO_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: AsymModel,
    pub rho_raw: f64,
    pub rho_rounded: i64,
    /// Whether `|ϱ − round(ϱ)|` is within the rounding tolerance.
    pub rho_integral: bool,
    pub residual_rms: f64,
    pub conditioning: f64,
}

pub fn fit(samples: &[Sample], with_c: bool) -> Result<FitResult> {
    fit_with(samples, with_c, DEFAULT_RHO_TOLERANCE)
}

fn check_span(samples: &[Sample], needed: usize) -> Result<()> {
    if samples.len() < needed {
        return Err(Error::Domain(format!("{} samples; at least {needed} needed", samples.len())));
    }
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, 0f64), |(lo, hi), s| (lo.min(s.log_inv_r), hi.max(s.log_inv_r)));
    // r must range over at least two decades
    if hi - lo < 2.0 * std::f64::consts::LN_10 * (1.0 - 1e-12) {
        return Err(Error::Domain("samples span less than two decades of r".into()));
    }
    Ok(())
}

pub fn fit_with(samples: &[Sample], with_c: bool, rho_tolerance: f64) -> Result<FitResult> {
    let ncols = if with_c { 4 } else { 3 };
    check_span(samples, ncols)?;
    let rows: Vec<Vec<f64>> = samples.iter().map(|s| basis(s.log_inv_r)[..ncols].to_vec()).collect();
    let y: Vec<f64> = samples.iter().map(|s| s.value).collect();
    let ls = least_squares(&rows, &y)?;
    let c = if with_c { ls.coeffs[3] } else { 0.0 };
    let model = AsymModel { kappa: ls.coeffs[0], rho: ls.coeffs[1], gamma: ls.coeffs[2], c };
    let rounded = model.rho.round();
    Ok(FitResult {
        model,
        rho_raw: model.rho,
        rho_rounded: rounded as i64,
        rho_integral: (model.rho - rounded).abs() <= rho_tolerance,
        residual_rms: ls.residual_rms,
        conditioning: ls.conditioning,
    })
}

/// Fit of a ratio behaving like `C′ (log r^{−1})^ϱ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLogFit {
    pub c_prime: f64,
    pub rho: f64,
    pub residual_rms: f64,
    pub conditioning: f64,
}

/// Takes logarithms and runs the main fitter with `κ` and `c` pinned to 0.
pub fn fit_power_log(samples: &[Sample]) -> Result<PowerLogFit> {
    check_span(samples, 2)?;
    if let Some(s) = samples.iter().find(|s| s.value <= 0.0) {
        return Err(Error::NonPositive(s.value));
    }
    let rows: Vec<Vec<f64>> = samples.iter().map(|s| basis(s.log_inv_r)[1..3].to_vec()).collect();
    let y: Vec<f64> = samples.iter().map(|s| s.value.ln()).collect();
    let ls = least_squares(&rows, &y)?;
    // ln V = ln C′ + ρ ln(2L) − ρ ln 2, and the ϱ column is −ln(2L)
    let rho = -ls.coeffs[0];
    let c_prime = (ls.coeffs[1] + rho * std::f64::consts::LN_2).exp();
    Ok(PowerLogFit { c_prime, rho, residual_rms: ls.residual_rms, conditioning: ls.conditioning })
}
