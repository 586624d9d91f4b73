//! Spectra of quasi-homogeneous germs.
//!
//! For `f` weighted homogeneous of weight 1 with weights `w_i`, the Jacobian
//! ideal is graded and the Milnor algebra `Q[x]/J_f` has a monomial basis.
//! Each basis monomial `x^k` contributes `Σ (k_i + 1) w_i` to the spectrum.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::SparseEchelon;
use crate::rat::{int, Rat};
use crate::singularity::poly::{weighted_degree, Polynomial};

/// Milnor–Orlik: `μ = Π (1/w_i − 1)`.
pub fn milnor_orlik(weights: &[Rat]) -> Result<usize> {
    let mu: Rat = weights.iter().map(|w| w.recip() - Rat::one()).product();
    if !mu.is_integer() {
        return Err(Error::InvalidGerm(format!(
            "weights give non-integral Milnor number {mu}"
        )));
    }
    mu.to_integer()
        .try_into()
        .map_err(|_| Error::InvalidGerm("Milnor number out of range".into()))
}

pub fn check_weights(weights: &[Rat], f: &Polynomial) -> Result<()> {
    if weights.len() != f.nvars() {
        return Err(Error::InvalidGerm("one weight per variable required".into()));
    }
    let half = Rat::new(1.into(), 2.into());
    for w in weights {
        if *w <= Rat::zero() || *w > half {
            return Err(Error::InvalidGerm(format!("weight {w} outside (0, 1/2]")));
        }
    }
    if f.is_zero() {
        return Err(Error::InvalidGerm("zero polynomial".into()));
    }
    if let Some(d) = f.weighted_degrees(weights).find(|d| !d.is_one()) {
        return Err(Error::InvalidGerm(format!(
            "polynomial is not weighted homogeneous of weight 1 (term of weight {d})"
        )));
    }
    Ok(())
}

/// All monomials of weighted degree `≤ bound`, grouped by degree.
fn monomials_by_weight(weights: &[Rat], bound: &Rat) -> BTreeMap<Rat, Vec<Vec<u32>>> {
    let mut out: BTreeMap<Rat, Vec<Vec<u32>>> = BTreeMap::new();
    fn go(i: usize, ws: &[Rat], left: Rat, cur: &mut Vec<u32>, out: &mut BTreeMap<Rat, Vec<Vec<u32>>>) {
        if i == ws.len() {
            out.entry(weighted_degree(cur, ws)).or_default().push(cur.clone());
            return;
        }
        let mut e = 0u32;
        let mut used = Rat::zero();
        while used <= left {
            cur[i] = e;
            go(i + 1, ws, &left - &used, cur, out);
            e += 1;
            used += &ws[i];
        }
        cur[i] = 0;
    }
    let mut cur = vec![0; weights.len()];
    go(0, weights, bound.clone(), &mut cur, &mut out);
    out
}

/// Spectrum of a weighted homogeneous isolated singularity via the graded
/// Milnor algebra. Validates isolatedness: the quotient must vanish in the
/// band of weights just above the Hessian degree and the total must match
/// Milnor–Orlik.
pub fn quasi_homogeneous_spectrum(weights: &[Rat], f: &Polynomial) -> Result<Vec<Rat>> {
    check_weights(weights, f)?;
    let expected = milnor_orlik(weights)?;
    let hessian: Rat = weights.iter().map(|w| Rat::one() - w * int(2)).sum();
    let band_top = &hessian + Rat::new(1.into(), 2.into());
    let by_weight = monomials_by_weight(weights, &band_top);
    let shift: Rat = weights.iter().sum();
    let partials = f.gradient();

    let mut spectrum = Vec::new();
    for (s, monos) in &by_weight {
        let index: HashMap<&[u32], usize> = monos.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut ech = SparseEchelon::default();
        for (i, g) in partials.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            // ∂_i f has weight 1 − w_i
            let need = s - (Rat::one() - &weights[i]);
            let Some(betas) = by_weight.get(&need) else { continue };
            for beta in betas {
                let mut row = BTreeMap::new();
                for (e, c) in g.terms() {
                    let m: Vec<u32> = e.iter().zip(beta).map(|(a, b)| a + b).collect();
                    let col = index.get(m.as_slice()).expect("weights are homogeneous");
                    row.insert(*col, c.clone());
                }
                ech.push(row);
            }
        }
        let q = monos.len() - ech.rank();
        if q > 0 && *s > hessian {
            return Err(Error::InvalidGerm(format!(
                "Milnor algebra nonzero in weight {s} above the Hessian degree: singularity not isolated"
            )));
        }
        for _ in 0..q {
            spectrum.push(s + &shift);
        }
    }
    if spectrum.len() != expected {
        return Err(Error::InvalidGerm(format!(
            "Milnor algebra has dimension {} but the weights predict {expected}",
            spectrum.len()
        )));
    }
    spectrum.sort();
    Ok(spectrum)
}

/// Closed-form Brieskorn–Pham spectrum `{ Σ k_i / a_i : 1 ≤ k_i ≤ a_i − 1 }`.
pub fn brieskorn_pham_spectrum(exponents: &[u32]) -> Vec<Rat> {
    let mut acc = vec![Rat::zero()];
    for &a in exponents {
        let mut next = Vec::with_capacity(acc.len() * (a as usize - 1));
        for s in &acc {
            for k in 1..a {
                next.push(s + Rat::new(k.into(), a.into()));
            }
        }
        acc = next;
    }
    acc.sort();
    acc
}
