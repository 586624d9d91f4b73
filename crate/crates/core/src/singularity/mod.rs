//! Invariants of isolated hypersurface singularities: Milnor number,
//! spectrum, spectral genus, monodromy eigenvalues.
//!
//! Spectrum convention: `Sp(f) ⊂ (0, n+1)`, symmetric about `(n+1)/2`, with
//! the top Hodge piece `Gr_F^n` carried by `α ∈ (0, 1]`. The semisimple
//! monodromy acts on the `α`-piece by `e^{-2πiα}`; with the logarithm branch
//! whose imaginary part lies in `[0, 2π)` this contributes `1 − α` to the
//! spectral genus for `α ∈ (0, 1)` and `0` for `α = 1`.

pub mod macaulay;
pub mod newton;
pub mod poly;
pub mod spectrum;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{frac, int, Rat};

pub use poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
pub enum Germ {
    BrieskornPham { exponents: Vec<u32> },
    QuasiHomogeneous { weights: Vec<Rat>, polynomial: Polynomial },
    NewtonConvenient { vertices: Vec<Vec<u32>> },
    Explicit { polynomial: Polynomial, degree_bound: usize },
}

impl Germ {
    pub fn brieskorn_pham(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidGerm("no variables".into()));
        }
        if let Some(a) = exponents.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidGerm(format!("Brieskorn–Pham exponent {a} < 2")));
        }
        Ok(Germ::BrieskornPham { exponents })
    }

    pub fn quasi_homogeneous(weights: Vec<Rat>, polynomial: Polynomial) -> Result<Self> {
        spectrum::check_weights(&weights, &polynomial)?;
        Ok(Germ::QuasiHomogeneous { weights, polynomial })
    }

    pub fn newton_convenient(vertices: Vec<Vec<u32>>) -> Result<Self> {
        let n = vertices.first().map(Vec::len).unwrap_or(0);
        newton::check_convenient(&vertices, n)?;
        Ok(Germ::NewtonConvenient { vertices })
    }

    /// Validates isolatedness at the given degree bound.
    pub fn explicit(polynomial: Polynomial, degree_bound: usize) -> Result<Self> {
        if polynomial.nvars() == 0 {
            return Err(Error::InvalidGerm("no variables".into()));
        }
        macaulay::milnor_macaulay(&polynomial, degree_bound)?;
        Ok(Germ::Explicit { polynomial, degree_bound })
    }

    pub fn nvars(&self) -> usize {
        match self {
            Germ::BrieskornPham { exponents } => exponents.len(),
            Germ::QuasiHomogeneous { weights, .. } => weights.len(),
            Germ::NewtonConvenient { vertices } => vertices.first().map(Vec::len).unwrap_or(0),
            Germ::Explicit { polynomial, .. } => polynomial.nvars(),
        }
    }

    /// Fiber dimension `n` (the germ lives in `n + 1` variables).
    pub fn fiber_dim(&self) -> usize {
        self.nvars() - 1
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Germ::BrieskornPham { .. } => "Brieskorn–Pham",
            Germ::QuasiHomogeneous { .. } => "quasi-homogeneous",
            Germ::NewtonConvenient { .. } => "Newton-convenient",
            Germ::Explicit { .. } => "explicit",
        }
    }

    /// Defining polynomial where one is known (Newton diagrams carry none).
    pub fn polynomial(&self) -> Option<Polynomial> {
        match self {
            Germ::BrieskornPham { exponents } => Some(Polynomial::brieskorn_pham(exponents)),
            Germ::QuasiHomogeneous { polynomial, .. } | Germ::Explicit { polynomial, .. } => {
                Some(polynomial.clone())
            }
            Germ::NewtonConvenient { .. } => None,
        }
    }
}

pub fn milnor(g: &Germ) -> Result<usize> {
    match g {
        Germ::BrieskornPham { exponents } => Ok(exponents.iter().map(|&a| a as usize - 1).product()),
        Germ::QuasiHomogeneous { weights, .. } => spectrum::milnor_orlik(weights),
        Germ::NewtonConvenient { vertices } => Ok(newton::kouchnirenko_milnor(vertices)? as usize),
        Germ::Explicit { polynomial, degree_bound } => macaulay::milnor_macaulay(polynomial, *degree_bound),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: usize,
    entries: Vec<Rat>,
}

impl Spectrum {
    pub fn new(n: usize, mut entries: Vec<Rat>) -> Result<Self> {
        let top = int(n as i64 + 1);
        if let Some(a) = entries.iter().find(|a| !a.is_positive() || **a >= top) {
            return Err(Error::Invariant(format!("spectral number {a} outside (0, {})", n + 1)));
        }
        entries.sort();
        Ok(Spectrum { n, entries })
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn fiber_dim(&self) -> usize {
        self.n
    }

    /// Invariance of the multiset under `α ↦ (n+1) − α`.
    pub fn is_symmetric(&self) -> bool {
        let top = int(self.n as i64 + 1);
        let mut mirrored: Vec<Rat> = self.entries.iter().map(|a| &top - a).collect();
        mirrored.sort();
        mirrored == self.entries
    }
}

pub fn spectrum(g: &Germ) -> Result<Spectrum> {
    let entries = match g {
        Germ::BrieskornPham { exponents } => spectrum::brieskorn_pham_spectrum(exponents),
        Germ::QuasiHomogeneous { weights, polynomial } => {
            spectrum::quasi_homogeneous_spectrum(weights, polynomial)?
        }
        Germ::NewtonConvenient { .. } => return Err(Error::SpectrumUnsupported("Newton-convenient")),
        Germ::Explicit { .. } => return Err(Error::SpectrumUnsupported("explicit")),
    };
    Spectrum::new(g.fiber_dim(), entries)
}

/// Sign convention for the spectral genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralConvention {
    /// Eigenvalue `e^{-2πiα}` on the `α`-piece: contribution `1 − α`.
    #[default]
    Steenbrink,
    /// Eigenvalue `e^{2πiα}`: contribution `α`.
    Alt,
}

impl std::str::FromStr for SpectralConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "steenbrink" => Ok(Self::Steenbrink),
            "alt" => Ok(Self::Alt),
            other => Err(Error::Parse(format!("unknown convention {other:?}"))),
        }
    }
}

pub fn spectral_genus_of(sp: &Spectrum, convention: SpectralConvention) -> Rat {
    let one = Rat::one();
    sp.entries
        .iter()
        .filter(|a| **a < one)
        .map(|a| match convention {
            SpectralConvention::Steenbrink => &one - a,
            SpectralConvention::Alt => a.clone(),
        })
        .sum()
}

pub fn spectral_genus(g: &Germ) -> Result<Rat> {
    spectral_genus_with(g, SpectralConvention::Steenbrink)
}

pub fn spectral_genus_with(g: &Germ, convention: SpectralConvention) -> Result<Rat> {
    Ok(spectral_genus_of(&spectrum(g)?, convention))
}

/// Angles `θ = frac(−α) ∈ [0, 1)` of the eigenvalues `e^{2πiθ}` of the
/// semisimple monodromy, one per spectral number.
pub fn monodromy_eigenvalues(g: &Germ) -> Result<Vec<Rat>> {
    Ok(monodromy_angles(&spectrum(g)?))
}

pub fn monodromy_angles(sp: &Spectrum) -> Vec<Rat> {
    let mut out: Vec<Rat> = sp.entries.iter().map(|a| frac(&-a)).collect();
    out.sort();
    out
}

/// Angles on the top Hodge piece only (`α ∈ (0, 1]`).
pub fn top_hodge_angles(sp: &Spectrum) -> Vec<Rat> {
    let one = Rat::one();
    let mut out: Vec<Rat> = sp.entries.iter().filter(|a| **a <= one).map(|a| frac(&-a)).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn bp(e: &[u32]) -> Germ {
        Germ::brieskorn_pham(e.to_vec()).unwrap()
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor(&bp(&[2, 2])).unwrap(), 1);
        assert_eq!(milnor(&bp(&[2, 3])).unwrap(), 2);
        assert_eq!(milnor(&bp(&[3, 3])).unwrap(), 4);
        let k = Germ::newton_convenient(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(milnor(&k).unwrap(), 2);
        let e = Germ::explicit(Polynomial::parse("x^3 + y^3", 2).unwrap(), 5).unwrap();
        assert_eq!(milnor(&e).unwrap(), 4);
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(&bp(&[2, 2])).unwrap().entries(), &[int(1)]);
        assert_eq!(spectrum(&bp(&[2, 3])).unwrap().entries(), &[rat(5, 6), rat(7, 6)]);
        assert_eq!(spectrum(&bp(&[2, 2, 2])).unwrap().entries(), &[rat(3, 2)]);
    }

    #[test]
    fn spectral_genus_examples() {
        assert_eq!(spectral_genus(&bp(&[2, 2])).unwrap(), int(0));
        assert_eq!(spectral_genus(&bp(&[2, 3])).unwrap(), rat(1, 6));
        assert_eq!(spectral_genus(&bp(&[2, 4])).unwrap(), rat(1, 4));
        assert_eq!(
            spectral_genus_with(&bp(&[2, 3]), SpectralConvention::Alt).unwrap(),
            rat(5, 6)
        );
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(monodromy_eigenvalues(&bp(&[2, 2])).unwrap(), vec![int(0)]);
        assert_eq!(monodromy_eigenvalues(&bp(&[2, 3])).unwrap(), vec![rat(1, 6), rat(5, 6)]);
        assert_eq!(monodromy_eigenvalues(&bp(&[2, 2, 2])).unwrap(), vec![rat(1, 2)]);
    }

    #[test]
    fn unsupported_variants() {
        let k = Germ::newton_convenient(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(spectrum(&k), Err(Error::SpectrumUnsupported("Newton-convenient")));
        let e = Germ::explicit(Polynomial::parse("x^2 + y^3", 2).unwrap(), 4).unwrap();
        assert!(matches!(spectral_genus(&e), Err(Error::SpectrumUnsupported(_))));
    }

    #[test]
    fn invalid_germs() {
        assert!(Germ::brieskorn_pham(vec![1, 3]).is_err());
        assert!(Germ::brieskorn_pham(vec![]).is_err());
        assert!(Germ::explicit(Polynomial::parse("x^2", 2).unwrap(), 4).is_err());
        assert!(Germ::newton_convenient(vec![vec![1, 1]]).is_err());
    }
}
