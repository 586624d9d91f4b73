//! Sparse multivariate polynomials over `Q`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{format_rat, int, parse_rat, Rat};

const LETTERS: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::InvalidGerm(format!(
                    "exponent vector of length {} for {nvars} variables",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// `Σ x_i^{a_i}`.
    pub fn brieskorn_pham(exponents: &[u32]) -> Self {
        let n = exponents.len();
        let terms = exponents.iter().enumerate().map(|(i, &a)| {
            let mut e = vec![0; n];
            e[i] = a;
            (e, int(1))
        });
        Self::from_terms(n, terms).expect("lengths agree")
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        let entry = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Parses e.g. `x^2 + 3/2*x*y^2 - y^5`. Variables are `x,y,z,w,u,v`
    /// (when `nvars <= 6`) or `x0, x1, ...`.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let var_index = |name: &str| -> Result<usize> {
            if let Some(i) = LETTERS.iter().position(|&l| l == name) {
                if nvars <= LETTERS.len() && i < nvars {
                    return Ok(i);
                }
            }
            if let Some(rest) = name.strip_prefix('x') {
                if let Ok(i) = rest.parse::<usize>() {
                    if i < nvars {
                        return Ok(i);
                    }
                }
            }
            Err(Error::Parse(format!("unknown variable {name:?} for {nvars} variables")))
        };
        let mut p = Self::zero(nvars);
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling operator in {s:?}")));
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            let mut coeff = int(1);
            let mut e = vec![0u32; nvars];
            for f in t.split('*') {
                if f.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {s:?}")));
                }
                if f.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                    coeff *= parse_rat(f)?;
                    continue;
                }
                let (name, pow) = match f.split_once('^') {
                    Some((n, p)) => (
                        n,
                        p.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?,
                    ),
                    None => (f, 1),
                };
                e[var_index(name)?] += pow;
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(e, coeff);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, c * int(e[i] as i64));
            }
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Lowest total degree of a term (`None` for the zero polynomial).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn weighted_degrees<'a>(&'a self, weights: &'a [Rat]) -> impl Iterator<Item = Rat> + 'a {
        self.terms.keys().map(move |e| weighted_degree(e, weights))
    }

    /// Exponent vectors of all terms (the support).
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }
}

pub fn weighted_degree(e: &[u32], weights: &[Rat]) -> Rat {
    e.iter().zip(weights).map(|(&k, w)| w * int(k as i64)).sum()
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let name = |i: usize| {
            if self.nvars <= LETTERS.len() {
                LETTERS[i].to_string()
            } else {
                format!("x{i}")
            }
        };
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { name(i) } else { format!("{}^{p}", name(i)) })
                .collect();
            match (vars.is_empty(), c == &int(1)) {
                (true, _) => write!(f, "{}", format_rat(c))?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{}*{}", format_rat(c), vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// All exponent vectors in `nvars` variables of total degree `< bound`.
pub fn monomials_below(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if bound == 0 {
        return out;
    }
    let mut cur = vec![0; nvars];
    go(0, bound - 1, &mut cur, &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}
