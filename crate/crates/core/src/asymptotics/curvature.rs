//! Numeric `∂_t ∂_t̄ log g` for `g(t) = Σ_i (log|t|²)^{ℓ_i} φ_i(t)` and the
//! comparison with `−ℓ / (4 |t|² (log|t|^{−1})²)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub type SmoothFn = Arc<dyn Fn(Complex64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct GTerm {
    pub ell: u32,
    pub phi: SmoothFn,
}

impl GTerm {
    pub fn new(ell: u32, phi: impl Fn(Complex64) -> f64 + Send + Sync + 'static) -> Self {
        GTerm { ell, phi: Arc::new(phi) }
    }

    pub fn constant(ell: u32, c: f64) -> Self {
        Self::new(ell, move |_| c)
    }
}

impl fmt::Debug for GTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GTerm {{ ell: {}, phi(0): {} }}", self.ell, (self.phi)(Complex64::new(0.0, 0.0)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvaturePoint {
    pub t: (f64, f64),
    pub curvature: f64,
    pub leading: f64,
    /// `|curvature − leading| · |t|² (log|t|^{−1})³`
    pub scaled_remainder: f64,
    /// `|curvature| · |t|² (log|t|^{−1})²`
    pub poincare: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    /// `max{ℓ_i : φ_i(0) ≠ 0}`, 0 if there is none.
    pub ell: u32,
    pub points: Vec<CurvaturePoint>,
    pub max_scaled_remainder: f64,
    pub max_poincare: f64,
}

fn g_value(terms: &[GTerm], t: Complex64) -> Result<f64> {
    let u = t.norm_sqr().ln();
    let g: f64 = terms.iter().map(|term| u.powi(term.ell as i32) * (term.phi)(t)).sum();
    if !(g > 0.0) {
        return Err(Error::NonPositive(g));
    }
    Ok(g)
}

/// Five-point Laplacian of `log g` with step `h`.
fn laplacian(terms: &[GTerm], t: Complex64, h: f64) -> Result<f64> {
    let f0 = g_value(terms, t)?.ln();
    let mut acc = 0.0;
    for d in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)] {
        acc += (g_value(terms, t + d)?.ln()) - f0;
    }
    Ok(acc / (h * h))
}

fn point(terms: &[GTerm], ell: u32, t: Complex64) -> Result<CurvaturePoint> {
    let a = t.norm();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("|t| = {a} outside (0, 1)")));
    }
    let h = a / 100.0;
    let coarse = laplacian(terms, t, h)?;
    let fine = laplacian(terms, t, h / 2.0)?;
    let curvature = (4.0 * fine - coarse) / 3.0 / 4.0;
    let lambda = -a.ln();
    let a2 = a * a;
    let leading = -(ell as f64) / (4.0 * a2 * lambda * lambda);
    Ok(CurvaturePoint {
        t: (t.re, t.im),
        curvature,
        leading,
        scaled_remainder: (curvature - leading).abs() * a2 * lambda.powi(3),
        poincare: curvature.abs() * a2 * lambda * lambda,
    })
}

pub fn curvature_check(terms: &[GTerm], grid: &[Complex64]) -> Result<CurvatureReport> {
    let origin = Complex64::new(0.0, 0.0);
    let ell = terms.iter().filter(|t| (t.phi)(origin) != 0.0).map(|t| t.ell).max().unwrap_or(0);
    let points = grid.par_iter().map(|&t| point(terms, ell, t)).collect::<Result<Vec<_>>>()?;
    let max_scaled_remainder = points.iter().map(|p| p.scaled_remainder).fold(0.0, f64::max);
    let max_poincare = points.iter().map(|p| p.poincare).fold(0.0, f64::max);
    Ok(CurvatureReport { ell, points, max_scaled_remainder, max_poincare })
}
