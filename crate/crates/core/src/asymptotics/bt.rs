//! Hermitian matrix models `H(t) = D(t) H̃(t) D(t)̄` with
//! `H̃(t) = Σ_m (log|t|^{−2})^m A_m` and `D(t) = diag(t^{−e_i})`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::asymptotics::Sample;
use crate::error::{Error, Result};
use crate::numeric::least_squares;

pub type CMatrix = DMatrix<Complex64>;

/// Relative tolerance for the Hermitian test on floating input.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

fn is_hermitian(m: &CMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    (m - m.adjoint()).iter().all(|z| z.norm() <= HERMITIAN_TOLERANCE * scale)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BTExpansion {
    coeffs: Vec<CMatrix>,
    exponents: Vec<u32>,
}

impl BTExpansion {
    pub fn new(coeffs: Vec<CMatrix>, exponents: Vec<u32>) -> Result<Self> {
        let h = exponents.len();
        if coeffs.is_empty() {
            return Err(Error::Domain("no coefficient matrices".into()));
        }
        for (m, a) in coeffs.iter().enumerate() {
            if a.nrows() != h || a.ncols() != h {
                return Err(Error::Domain(format!("A_{m} is not {h}×{h}")));
            }
            if !is_hermitian(a) {
                return Err(Error::NonHermitian(m));
            }
        }
        Ok(BTExpansion { coeffs, exponents })
    }

    /// Highest power `n` of `log|t|^{−2}`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn coeffs(&self) -> &[CMatrix] {
        &self.coeffs
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }
}

fn check_t(t: Complex64) -> Result<f64> {
    let a = t.norm();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("|t| = {a} outside (0, 1)")));
    }
    Ok(-2.0 * a.ln())
}

/// `H̃(t) = Σ_m (log|t|^{−2})^m A_m`.
pub fn bt_eval(b: &BTExpansion, t: Complex64) -> Result<CMatrix> {
    let ell = check_t(t)?;
    let h = b.size();
    Ok(b.coeffs.iter().rev().fold(CMatrix::zeros(h, h), |acc, a| acc * Complex64::from(ell) + a))
}

pub fn bt_det(b: &BTExpansion, t: Complex64) -> Result<f64> {
    Ok(bt_eval(b, t)?.determinant().re)
}

/// `H = D H̃ D̄`, entrywise `H_ij = t^{−e_i} H̃_ij t̄^{−e_j}`.
pub fn compose_with_d(h_tilde: &CMatrix, exponents: &[u32], t: Complex64) -> CMatrix {
    let d: Vec<Complex64> = exponents.iter().map(|&e| t.powu(e).inv()).collect();
    CMatrix::from_fn(h_tilde.nrows(), h_tilde.ncols(), |i, j| d[i] * h_tilde[(i, j)] * d[j].conj())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DhReport {
    pub tilde: Vec<(Complex64, CMatrix)>,
    pub min_eigenvalue: f64,
    pub argmin: Complex64,
}

impl DhReport {
    pub fn positive(&self) -> bool {
        self.min_eigenvalue > 0.0
    }
}

/// Strips `D(t)` from sampled `H(t)` and reports the infimum of the smallest
/// eigenvalue of `H̃` over the grid.
pub fn dh_decompose(samples: &[(Complex64, CMatrix)], exponents: &[u32]) -> Result<DhReport> {
    let h = exponents.len();
    let mut tilde = Vec::with_capacity(samples.len());
    let mut min_eigenvalue = f64::INFINITY;
    let mut argmin = Complex64::new(0.0, 0.0);
    for (k, (t, m)) in samples.iter().enumerate() {
        if *t == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("grid contains t = 0".into()));
        }
        if m.nrows() != h || m.ncols() != h {
            return Err(Error::Domain(format!("sample {k} is not {h}×{h}")));
        }
        if !is_hermitian(m) {
            return Err(Error::NonHermitian(k));
        }
        let d: Vec<Complex64> = exponents.iter().map(|&e| t.powu(e)).collect();
        let ht = CMatrix::from_fn(h, h, |i, j| d[i] * m[(i, j)] * d[j].conj());
        let herm = (&ht + ht.adjoint()) * Complex64::from(0.5);
        let low = herm.symmetric_eigenvalues().min();
        if low < min_eigenvalue {
            min_eigenvalue = low;
            argmin = *t;
        }
        tilde.push((*t, ht));
    }
    Ok(DhReport { tilde, min_eigenvalue, argmin })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BtDetFit {
    pub coeffs: Vec<f64>,
    pub residual_rms: f64,
    pub conditioning: f64,
}

/// Fits `det H̃ = Σ_{m ≤ degree} a_m ℓ^m` with `ℓ = log|t|^{−2} = 2 log r^{−1}`.
pub fn bt_det_fit(samples: &[Sample], degree: usize) -> Result<BtDetFit> {
    let rows: Vec<Vec<f64>> = samples
        .iter()
        .map(|s| {
            let ell = 2.0 * s.log_inv_r();
            (0..=degree).map(|m| ell.powi(m as i32)).collect()
        })
        .collect();
    let y: Vec<f64> = samples.iter().map(|s| s.value).collect();
    let ls = least_squares(&rows, &y)?;
    Ok(BtDetFit { coeffs: ls.coeffs, residual_rms: ls.residual_rms, conditioning: ls.conditioning })
}

/// `max{m : |a_m| > tol · max_k |a_k|}`; `None` if every coefficient vanishes.
pub fn bt_rho(coeffs: &[f64], tol: f64) -> Option<usize> {
    let top = coeffs.iter().map(|a| a.abs()).fold(0.0, f64::max);
    if top == 0.0 {
        return None;
    }
    coeffs.iter().rposition(|a| a.abs() > tol * top)
}
