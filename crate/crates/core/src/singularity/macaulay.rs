//! Local algebra dimension by linear algebra on truncated monomial spaces.
//!
//! For a germ `f` at the origin, `dim O/(J_f + m^D)` is computed as the
//! number of monomials of degree `< D` minus the rank of the Macaulay matrix
//! whose rows are `x^β ∂_i f` truncated below degree `D`. The sequence is
//! non-decreasing in `D`; once two consecutive bounds agree, Nakayama gives
//! `m^D ⊂ J_f` and the value is the Milnor number.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exact::SparseEchelon;
use crate::singularity::poly::{monomials_below, Polynomial};

/// `dim_Q Q[x]/(J_f + m^bound)`.
pub fn truncated_local_dim(f: &Polynomial, bound: u32) -> usize {
    let n = f.nvars();
    let monos = monomials_below(n, bound);
    let index: HashMap<&[u32], usize> = monos.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut ech = SparseEchelon::default();
    for g in f.gradient() {
        let Some(ord) = g.order() else { continue };
        if ord >= bound {
            continue;
        }
        for beta in monos.iter().filter(|b| b.iter().sum::<u32>() + ord < bound) {
            let mut row = BTreeMap::new();
            for (e, c) in g.terms() {
                let m: Vec<u32> = e.iter().zip(beta).map(|(a, b)| a + b).collect();
                if let Some(&col) = index.get(m.as_slice()) {
                    row.insert(col, c.clone());
                }
            }
            ech.push(row);
        }
    }
    monos.len() - ech.rank()
}

/// Milnor number from the Macaulay oracle, checked for stabilization between
/// `bound` and `bound + 2`.
pub fn milnor_macaulay(f: &Polynomial, bound: usize) -> Result<usize> {
    let b = u32::try_from(bound).map_err(|_| Error::OutOfRange("degree bound".into()))?;
    let low = truncated_local_dim(f, b);
    let high = truncated_local_dim(f, b + 2);
    if low != high {
        return Err(Error::NonIsolated { bound, low, high });
    }
    Ok(low)
}
