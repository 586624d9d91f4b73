//! Floating-point helpers: compensated summation and a column-scaled SVD
//! least-squares solver.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    for x in xs {
        acc.add(x);
    }
    acc.value()
}

/// Relative singular-value cutoff below which a design is called rank deficient.
pub const RANK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquares {
    pub coeffs: Vec<f64>,
    pub residual_rms: f64,
    /// Condition number of the normal matrix of the column-scaled design.
    pub conditioning: f64,
}

/// Solves `min ‖A x − y‖` for a dense design given row by row. Columns are
/// scaled to unit norm before the SVD so the reported conditioning reflects
/// the geometry of the basis rather than its units.
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Result<LeastSquares> {
    let m = rows.len();
    let n = rows.first().map(Vec::len).unwrap_or(0);
    if n == 0 || m < n || y.len() != m {
        return Err(Error::Domain(format!("{m} samples for {n} unknowns")));
    }
    if rows.iter().flatten().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite sample".into()));
    }
    let a = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
    let scale: Vec<f64> = (0..n).map(|j| a.column(j).norm()).collect();
    if scale.iter().any(|&s| s == 0.0) {
        return Err(Error::RankDeficient { conditioning: f64::INFINITY });
    }
    let scaled = DMatrix::from_fn(m, n, |i, j| a[(i, j)] / scale[j]);
    let svd = scaled.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let conditioning = (smax / smin).powi(2);
    if !(smin > RANK_TOLERANCE * smax) {
        return Err(Error::RankDeficient { conditioning });
    }
    let u = svd.u.as_ref().expect("requested U");
    let vt = svd.v_t.as_ref().expect("requested V^T");
    let b = DVector::from_column_slice(y);
    let utb = u.transpose() * &b;
    let z = DVector::from_fn(n, |k, _| utb[k] / svd.singular_values[k]);
    let x = vt.transpose() * z;
    let coeffs: Vec<f64> = (0..n).map(|j| x[j] / scale[j]).collect();

    let sq = compensated_sum(rows.iter().zip(y).map(|(row, yi)| {
        let fit = compensated_sum(row.iter().zip(&coeffs).map(|(a, c)| a * c));
        (yi - fit).powi(2)
    }));
    Ok(LeastSquares { coeffs, residual_rms: (sq / m as f64).sqrt(), conditioning })
}
