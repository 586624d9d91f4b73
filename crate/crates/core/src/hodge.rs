//! Elementary exponents and the δ / ε invariants, from user-supplied
//! monodromy angles or semi-stable-reduction colengths.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{int, Rat};
use crate::singularity::{top_hodge_angles, Spectrum};

/// Angles `θ ∈ [0, 1)` of the eigenvalues `e^{2πiθ}` of the semisimple
/// monodromy on `F^n_∞ H^{n+q}`, for `q = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromySpec {
    n: usize,
    per_degree: BTreeMap<usize, Vec<Rat>>,
}

impl MonodromySpec {
    pub fn new(n: usize, per_degree: BTreeMap<usize, Vec<Rat>>) -> Result<Self> {
        for (q, angles) in &per_degree {
            if *q > n {
                return Err(Error::OutOfRange(format!("degree q = {q} (n = {n})")));
            }
            if let Some(a) = angles.iter().find(|a| a.is_negative() || **a >= Rat::one()) {
                return Err(Error::OutOfRange(format!("angle {a} not in [0, 1)")));
            }
        }
        Ok(MonodromySpec { n, per_degree })
    }

    /// Unipotent monodromy in every degree (all angles 0, `count[q]` of them).
    pub fn unipotent(n: usize, counts: &[usize]) -> Result<Self> {
        let per_degree = counts
            .iter()
            .enumerate()
            .map(|(q, &c)| (q, vec![Rat::zero(); c]))
            .collect();
        Self::new(n, per_degree)
    }

    /// The vanishing-cohomology description of an isolated singularity: the
    /// top Hodge piece sits in degree 0 with the angles of `α ∈ (0, 1]`.
    pub fn from_spectrum(sp: &Spectrum) -> Self {
        let mut per_degree = BTreeMap::new();
        per_degree.insert(0, top_hodge_angles(sp));
        MonodromySpec { n: sp.fiber_dim(), per_degree }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn angles(&self, q: usize) -> &[Rat] {
        self.per_degree.get(&q).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Appends eigenvalue 1 (angle 0) in degree `q`.
    pub fn with_unit_eigenvalue(mut self, q: usize) -> Result<Self> {
        if q > self.n {
            return Err(Error::OutOfRange(format!("degree q = {q} (n = {})", self.n)));
        }
        self.per_degree.entry(q).or_default().push(Rat::zero());
        Ok(self)
    }
}

/// `δ^q = Σ θ` over the angles in degree `q`.
pub fn delta_q(spec: &MonodromySpec, q: usize) -> Result<Rat> {
    if q > spec.n {
        return Err(Error::OutOfRange(format!("degree q = {q} (n = {})", spec.n)));
    }
    Ok(spec.angles(q).iter().sum())
}

/// `ε_π = Σ_q (−1)^q δ^q`.
pub fn epsilon_pi(spec: &MonodromySpec) -> Rat {
    (0..=spec.n)
        .map(|q| {
            let d: Rat = spec.angles(q).iter().sum();
            if q % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColengthSpec {
    deg_mu: u64,
    per_degree: BTreeMap<usize, u64>,
}

impl ColengthSpec {
    pub fn new(deg_mu: u64, per_degree: BTreeMap<usize, u64>) -> Result<Self> {
        if deg_mu == 0 {
            return Err(Error::OutOfRange("deg μ = 0".into()));
        }
        Ok(ColengthSpec { deg_mu, per_degree })
    }

    pub fn deg_mu(&self) -> u64 {
        self.deg_mu
    }
}

/// `δ = Σ_q (−1)^q colength_q / deg μ`.
pub fn delta_from_colength(spec: &ColengthSpec) -> Rat {
    let alt: Rat = spec
        .per_degree
        .iter()
        .map(|(&q, &c)| if q % 2 == 0 { int(c as i64) } else { -int(c as i64) })
        .sum();
    alt / int(spec.deg_mu as i64)
}
