//! Dedekind η and determinants of flat tori along degenerating families of
//! elliptic curves.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::asymptotics::Sample;
use crate::error::{Error, Result};
use crate::numeric::Neumaier;

fn check_tau(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
        return Err(Error::Domain(format!("Im τ = {} must be positive", tau.im)));
    }
    Ok(())
}

/// Smallest `terms` with `|q|^terms < 10^{−30}`.
pub fn eta_terms(tau: Complex64) -> Result<usize> {
    check_tau(tau)?;
    let per = 2.0 * PI * tau.im;
    Ok((30.0 * std::f64::consts::LN_10 / per).floor() as usize + 1)
}

/// `q^{1/24} Π_{k=1}^{terms} (1 − q^k)` with `q = e^{2πiτ}`.
pub fn eta(tau: Complex64, terms: usize) -> Result<Complex64> {
    check_tau(tau)?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let q = (two_pi_i * tau).exp();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for _ in 0..terms {
        qk *= q;
        prod *= Complex64::new(1.0, 0.0) - qk;
    }
    Ok((two_pi_i * tau / 24.0).exp() * prod)
}

pub fn eta_auto(tau: Complex64) -> Result<Complex64> {
    eta(tau, eta_terms(tau)?)
}

/// `log |η(τ)| = −π Im τ / 12 + Σ_k log |1 − q^k|`, finite for any `Im τ > 0`.
pub fn log_abs_eta(tau: Complex64) -> Result<f64> {
    let terms = eta_terms(tau)?;
    let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let mut acc = Neumaier::default();
    acc.add(-PI * tau.im / 12.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for _ in 0..terms {
        qk *= q;
        if qk.norm() == 0.0 {
            break;
        }
        acc.add((Complex64::new(1.0, 0.0) - qk).norm().ln());
    }
    Ok(acc.value())
}

/// `log((Im τ)² |η(τ)|⁴)`, the determinant for the flat metric `|dz|²` on
/// `C/(Z + τZ)` up to an additive constant. Invariant under `τ ↦ τ + 1`;
/// under `τ ↦ −1/τ` it shifts by `−log |τ|²` since the area changes.
pub fn torus_log_det(tau: Complex64) -> Result<f64> {
    Ok(2.0 * tau.im.ln() + 4.0 * log_abs_eta(tau)?)
}

/// `log(Im τ |η(τ)|⁴)`, the same determinant after rescaling to area 1;
/// invariant under the full modular group.
pub fn torus_log_det_unit_area(tau: Complex64) -> Result<f64> {
    Ok(tau.im.ln() + 4.0 * log_abs_eta(tau)?)
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyKind {
    /// `τ(s) = log s / (2πi)`, sampled at real `s = r`: `τ = i log r^{−1} / 2π`.
    NodeTate,
    /// Explicit `(log r^{−1}, τ)` rows.
    PrescribedTau(Vec<(f64, Complex64)>),
}

fn node_tate_sample(l: f64) -> Result<Sample> {
    if !(l > 2.0 * PI) {
        return Err(Error::Domain(format!("log(1/r) = {l} ≤ 2π: Im τ would be ≤ 1")));
    }
    let tau = Complex64::new(0.0, l / (2.0 * PI));
    Sample::from_log_inv_r(l, -torus_log_det(tau)?)
}

/// Samples `(r, −log det′Δ(τ(r)))`. NodeTate uses the given grid of
/// `log r^{−1}` values (each `> 2π`); PrescribedTau uses its own rows and
/// requires an empty grid.
pub fn sample_family(kind: &FamilyKind, log_inv_r_grid: &[f64]) -> Result<Vec<Sample>> {
    match kind {
        FamilyKind::NodeTate => log_inv_r_grid.par_iter().map(|&l| node_tate_sample(l)).collect(),
        FamilyKind::PrescribedTau(rows) => {
            if !log_inv_r_grid.is_empty() {
                return Err(Error::Domain("a prescribed-τ family carries its own grid".into()));
            }
            rows.par_iter()
                .map(|&(l, tau)| Sample::from_log_inv_r(l, -torus_log_det(tau)?))
                .collect()
        }
    }
}

/// NodeTate grid with `Im τ` evenly spaced in log scale over `[lo, hi]`.
pub fn node_tate_grid(im_tau_lo: f64, im_tau_hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (im_tau_lo.ln(), im_tau_hi.ln());
    (0..count)
        .map(|k| {
            let s = if count > 1 { k as f64 / (count - 1) as f64 } else { 0.0 };
            2.0 * PI * (a + s * (b - a)).exp()
        })
        .collect()
}
