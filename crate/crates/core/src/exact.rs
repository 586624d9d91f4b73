//! Small exact linear algebra over `Q`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rat::Rat;

/// Determinant by Gaussian elimination over `Q`.
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut sign = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            sign = -sign;
        }
        let p = m[col][col].clone();
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    (0..n).fold(sign, |acc, i| acc * &m[i][i])
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        b.swap(piv, col);
        let p = a[col][col].clone();
        for c in col..n {
            a[col][c] = &a[col][c] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    Some(b)
}

/// Rank of a dense matrix.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut ech = SparseEchelon::default();
    for r in rows {
        ech.push(r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect());
    }
    ech.rank()
}

/// Incremental row echelon form for sparse rows keyed by column index.
#[derive(Default, Debug)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Rat>>,
}

impl SparseEchelon {
    /// Reduces `row` against the basis and keeps it if it is independent.
    /// Returns whether the rank grew.
    pub fn push(&mut self, mut row: BTreeMap<usize, Rat>) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => {
                    let f = lead_val.clone();
                    for (c, v) in piv {
                        let e = row.entry(*c).or_insert_with(Rat::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = lead_val.recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}
