//! Truncated graded commutative algebra on named Chern-class generators.
//!
//! Elements live in `Q[g_1, .., g_r] / (everything of degree > dim)`. Bundles
//! are described by their Chern classes; genera are evaluated through power
//! sums of Chern roots obtained from Newton's identities.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{factorial, format_rat, int, parse_rat, Rat};
use crate::series::Series;

/// Exponent vector aligned with the generators of a [`RingCtx`].
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCtx {
    dim: usize,
    generators: Vec<Generator>,
}

impl RingCtx {
    pub fn new(dim: usize, generators: Vec<Generator>) -> Result<Arc<Self>> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::InvalidRing(format!("generator {} has degree 0", g.name)));
            }
            if g.degree > dim {
                return Err(Error::InvalidRing(format!(
                    "generator {} has degree {} > dim {dim}",
                    g.name, g.degree
                )));
            }
            if !valid_name(&g.name) {
                return Err(Error::InvalidRing(format!("bad generator name {:?}", g.name)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidRing(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(Arc::new(RingCtx { dim, generators }))
    }

    /// Shorthand for generators given as `(name, degree)` pairs.
    pub fn with(dim: usize, gens: &[(&str, usize)]) -> Result<Arc<Self>> {
        Self::new(
            dim,
            gens.iter()
                .map(|&(n, d)| Generator { name: n.to_string(), degree: d })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, m: &[u32]) -> usize {
        m.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as usize * g.degree)
            .sum()
    }

    /// All monomials of exactly the given degree.
    pub fn monomials_of_degree(&self, degree: usize) -> Vec<Monomial> {
        fn go(ctx: &RingCtx, i: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if i == ctx.generators.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let d = ctx.generators[i].degree;
            let mut e = 0;
            while e * d <= left {
                cur[i] = e as u32;
                go(ctx, i + 1, left - e * d, cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        let mut cur = vec![0; self.generators.len()];
        go(self, 0, degree, &mut cur, &mut out);
        out
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Parses a product such as `t*h^2` (or `1`) into a monomial.
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let mut m = vec![0u32; self.generators.len()];
        let s = s.trim();
        if s == "1" {
            return Ok(m);
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            m[i] += exp;
        }
        Ok(m)
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An element of the truncated graded ring. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct GradedElt {
    ctx: Arc<RingCtx>,
    terms: BTreeMap<Monomial, Rat>,
}

impl GradedElt {
    pub fn zero(ctx: &Arc<RingCtx>) -> Self {
        GradedElt { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<RingCtx>, c: Rat) -> Self {
        let mut e = Self::zero(ctx);
        e.insert(vec![0; ctx.generators.len()], c);
        e
    }

    pub fn one(ctx: &Arc<RingCtx>) -> Self {
        Self::constant(ctx, Rat::one())
    }

    pub fn generator(ctx: &Arc<RingCtx>, name: &str) -> Result<Self> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| Error::InvalidRing(format!("unknown generator {name:?}")))?;
        let mut m = vec![0; ctx.generators.len()];
        m[i] = 1;
        Ok(Self::monomial(ctx, m, Rat::one()))
    }

    pub fn monomial(ctx: &Arc<RingCtx>, m: Monomial, c: Rat) -> Self {
        let mut e = Self::zero(ctx);
        e.insert(m, c);
        e
    }

    /// Parses a polynomial such as `2*t*h - 3/2*x^2 + 1` in the ring's generators.
    pub fn parse(ctx: &Arc<RingCtx>, s: &str) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (sign, term) in split_terms(s)? {
            let mut coeff = Rat::one();
            let mut mono = vec![0u32; ctx.generators.len()];
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {s:?}")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                    coeff *= parse_rat(factor)?;
                } else {
                    let m = ctx.parse_monomial(factor)?;
                    for (a, b) in mono.iter_mut().zip(m) {
                        *a += b;
                    }
                }
            }
            if sign < 0 {
                coeff = -coeff;
            }
            out.insert(mono, coeff);
        }
        Ok(out)
    }

    fn insert(&mut self, m: Monomial, c: Rat) {
        use std::collections::btree_map::Entry;
        if self.ctx.degree(&m) > self.ctx.dim {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0; self.ctx.generators.len()])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: usize) -> Self {
        GradedElt {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ctx.degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms.keys().all(|m| self.ctx.degree(m) == degree)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = self.ctx.degree(ma);
            for (mb, cb) in &other.terms {
                if da + self.ctx.degree(mb) > self.ctx.dim {
                    continue;
                }
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(GradedElt { ctx: self.ctx.clone(), terms: acc })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("graded elements from different rings")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("graded elements from different rings")
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        GradedElt {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `φ(self)` for a nilpotent element (zero constant term). Terms of `φ`
    /// beyond `dim` cannot contribute.
    pub fn apply_series(&self, phi: &Series) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ComposeConstantNonZero);
        }
        if phi.order() < self.ctx.dim && !self.is_zero() {
            return Err(Error::OutOfRange(format!(
                "series order {} below ring dimension {}",
                phi.order(),
                self.ctx.dim
            )));
        }
        let top = self.ctx.dim.min(phi.order());
        let mut acc = Self::constant(&self.ctx, phi.coeff(top));
        for k in (0..top).rev() {
            acc = acc.mul(self);
            acc = acc.add(&Self::constant(&self.ctx, phi.coeff(k)));
        }
        Ok(acc)
    }

    pub fn exp(&self) -> Result<Self> {
        self.apply_series(&crate::series::exp_linear(&Rat::one(), self.ctx.dim))
    }

    /// Re-expresses this element in a larger ring containing all of its generators.
    pub fn embed(&self, target: &Arc<RingCtx>) -> Result<Self> {
        let map: Vec<usize> = self
            .ctx
            .generators
            .iter()
            .map(|g| {
                let j = target.index_of(&g.name).ok_or_else(|| {
                    Error::InvalidRing(format!("generator {} missing from target ring", g.name))
                })?;
                if target.generators[j].degree != g.degree {
                    return Err(Error::InvalidRing(format!("degree mismatch for {}", g.name)));
                }
                Ok(j)
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut tm = vec![0; target.generators.len()];
            for (i, &e) in m.iter().enumerate() {
                tm[map[i]] = e;
            }
            out.insert(tm, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Debug for GradedElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // lowest degree first
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(m, _)| (self.ctx.degree(m), std::cmp::Reverse((*m).clone())));
        for (i, (m, c)) in items.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = self.ctx.format_monomial(m);
            if mono == "1" {
                write!(f, "{}", format_rat(c))?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rat(c))?;
            }
        }
        Ok(())
    }
}

fn split_terms(s: &str) -> Result<Vec<(i8, String)>> {
    let mut out = Vec::new();
    let mut sign = 1i8;
    let mut cur = String::new();
    let mut prev_caret = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' if !prev_caret && !cur.trim().is_empty() && !cur.trim_end().ends_with('/') => {
                out.push((sign, cur.trim().to_string()));
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
            }
            '+' | '-' if cur.trim().is_empty() => {
                if ch == '-' {
                    sign = -sign;
                }
            }
            c if c.is_whitespace() => cur.push(c),
            c => cur.push(c),
        }
        if !ch.is_whitespace() {
            prev_caret = ch == '^';
        }
    }
    if cur.trim().is_empty() {
        if out.is_empty() {
            return Err(Error::Parse(format!("empty expression {s:?}")));
        }
        return Err(Error::Parse(format!("dangling operator in {s:?}")));
    }
    out.push((sign, cur.trim().to_string()));
    Ok(out)
}

/// Chern data of a vector bundle: `chern[i]` is `c_{i+1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct BundleData {
    pub name: String,
    rank: usize,
    chern: Vec<GradedElt>,
}

impl BundleData {
    /// Validates homogeneity and pads missing classes with zero up to `min(rank, dim)`.
    pub fn new(name: impl Into<String>, rank: usize, chern: Vec<GradedElt>, ctx: &Arc<RingCtx>) -> Result<Self> {
        let name = name.into();
        if rank == 0 {
            return Err(Error::InvalidBundle(format!("{name}: rank must be positive")));
        }
        let len = rank.min(ctx.dim);
        if chern.len() > rank {
            return Err(Error::InvalidBundle(format!(
                "{name}: {} Chern classes for rank {rank}",
                chern.len()
            )));
        }
        let mut classes = Vec::with_capacity(len);
        for (i, c) in chern.into_iter().enumerate() {
            if c.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
            if !c.is_homogeneous(i + 1) {
                return Err(Error::InvalidBundle(format!(
                    "{name}: c_{} is not homogeneous of degree {}",
                    i + 1,
                    i + 1
                )));
            }
            if i < len {
                classes.push(c);
            } else if !c.is_zero() {
                // already truncated away by the ring; anything left is an error
                return Err(Error::InvalidBundle(format!("{name}: c_{} beyond ring dimension", i + 1)));
            }
        }
        while classes.len() < len {
            classes.push(GradedElt::zero(ctx));
        }
        Ok(BundleData { name, rank, chern: classes })
    }

    pub fn trivial(ctx: &Arc<RingCtx>, rank: usize) -> Self {
        Self::new("O", rank, vec![], ctx).expect("trivial bundle is valid")
    }

    pub fn line(name: impl Into<String>, c1: GradedElt) -> Result<Self> {
        let ctx = c1.ctx().clone();
        Self::new(name, 1, vec![c1], &ctx)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ctx(&self) -> Option<&Arc<RingCtx>> {
        self.chern.first().map(|c| c.ctx())
    }

    /// `c_i`, zero for `i > min(rank, dim)`; `c_0 = 1`.
    pub fn c(&self, i: usize, ctx: &Arc<RingCtx>) -> GradedElt {
        match i {
            0 => GradedElt::one(ctx),
            _ => self.chern.get(i - 1).cloned().unwrap_or_else(|| GradedElt::zero(ctx)),
        }
    }

    pub fn chern_classes(&self) -> &[GradedElt] {
        &self.chern
    }

    pub fn total_chern(&self, ctx: &Arc<RingCtx>) -> GradedElt {
        (0..=self.chern.len()).fold(GradedElt::zero(ctx), |acc, i| acc.add(&self.c(i, ctx)))
    }

    /// Dual bundle: `c_i ↦ (-1)^i c_i`.
    pub fn dual(&self) -> Self {
        BundleData {
            name: format!("{}^*", self.name),
            rank: self.rank,
            chern: self
                .chern
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// Direct sum, encoded by `c(a ⊕ b) = c(a) c(b)`.
    pub fn direct_sum(&self, other: &Self, ctx: &Arc<RingCtx>) -> Result<Self> {
        let total = self.total_chern(ctx).try_mul(&other.total_chern(ctx))?;
        let rank = self.rank + other.rank;
        let chern = (1..=rank.min(ctx.dim)).map(|k| total.component(k)).collect();
        Self::new(format!("{}+{}", self.name, other.name), rank, chern, ctx)
    }

    /// Tensor product of two line bundles.
    pub fn tensor_lines(&self, other: &Self, ctx: &Arc<RingCtx>) -> Result<Self> {
        if self.rank != 1 || other.rank != 1 {
            return Err(Error::InvalidBundle("tensor_lines needs two line bundles".into()));
        }
        Self::new(
            format!("{}⊗{}", self.name, other.name),
            1,
            vec![self.c(1, ctx).try_add(&other.c(1, ctx))?],
            ctx,
        )
    }
}

/// Power sums `p_1..=p_upto` of the Chern roots:
/// `p_k = Σ_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k`.
pub fn power_sums(b: &BundleData, ctx: &Arc<RingCtx>, upto: usize) -> Vec<GradedElt> {
    let mut p: Vec<GradedElt> = vec![GradedElt::constant(ctx, int(b.rank as i64))];
    for k in 1..=upto {
        let mut acc = b.c(k, ctx).scale(&int(k as i64));
        if k % 2 == 0 {
            acc = acc.neg();
        }
        for i in 1..k {
            let term = b.c(i, ctx).mul(&p[k - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        p.push(acc);
    }
    p
}

/// `ch(b) = rank + Σ_{k=1}^{order} p_k / k!`.
pub fn chern_character_to(b: &BundleData, ctx: &Arc<RingCtx>, order: usize) -> Result<GradedElt> {
    if order > ctx.dim {
        return Err(Error::OutOfRange(format!("order {order} above ring dimension {}", ctx.dim)));
    }
    let p = power_sums(b, ctx, order);
    let mut ch = p[0].clone();
    for (k, pk) in p.iter().enumerate().skip(1) {
        ch = ch.add(&pk.scale(&Rat::new(1.into(), factorial(k))));
    }
    Ok(ch)
}

pub fn chern_character(b: &BundleData, ctx: &Arc<RingCtx>) -> GradedElt {
    chern_character_to(b, ctx, ctx.dim).expect("order equals dim")
}

/// `Π_i φ(x_i)` over Chern roots, as `exp(Σ_k b_k p_k)` with `log φ = Σ b_k x^k`.
pub fn multiplicative_genus(phi: &Series, b: &BundleData, ctx: &Arc<RingCtx>) -> Result<GradedElt> {
    if !phi.coeff(0).is_one() {
        return Err(Error::GenusConstantNotOne);
    }
    let dim = ctx.dim;
    if dim == 0 {
        return Ok(GradedElt::one(ctx));
    }
    if phi.order() < dim {
        return Err(Error::OutOfRange(format!(
            "series order {} below ring dimension {dim}",
            phi.order()
        )));
    }
    let log_phi = phi.truncate(dim).log()?;
    let p = power_sums(b, ctx, dim);
    let mut sum = GradedElt::zero(ctx);
    for (k, pk) in p.iter().enumerate().skip(1) {
        let bk = log_phi.coeff(k);
        if !bk.is_zero() {
            sum = sum.add(&pk.scale(&bk));
        }
    }
    sum.exp()
}

/// `Σ_i ψ(x_i)` over Chern roots.
pub fn additive_genus(psi: &Series, b: &BundleData, ctx: &Arc<RingCtx>) -> GradedElt {
    let p = power_sums(b, ctx, ctx.dim);
    p.iter()
        .enumerate()
        .fold(GradedElt::zero(ctx), |acc, (k, pk)| acc.add(&pk.scale(&psi.coeff(k))))
}

/// How an even series is turned into a class of a rank-2 bundle with `c_1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvenClassConvention {
    /// Roots `±x`, `x² ↦ -c_2`, constant term `ψ(0)`.
    #[default]
    Substitution,
    /// `ψ(x) + ψ(-x)` summed over the two roots, constant term `2ψ(0)`.
    Additive,
}

/// Even series `ψ` evaluated on a rank-2 bundle with vanishing `c_1`.
pub fn even_series_class(psi: &Series, b: &BundleData, ctx: &Arc<RingCtx>) -> Result<GradedElt> {
    even_series_class_with(psi, b, ctx, EvenClassConvention::Substitution)
}

pub fn even_series_class_with(
    psi: &Series,
    b: &BundleData,
    ctx: &Arc<RingCtx>,
    convention: EvenClassConvention,
) -> Result<GradedElt> {
    if !psi.is_even() {
        return Err(Error::InvalidBundle("series is not even".into()));
    }
    if b.rank != 2 {
        return Err(Error::InvalidBundle(format!("{}: rank {} != 2", b.name, b.rank)));
    }
    if !b.c(1, ctx).is_zero() {
        return Err(Error::InvalidBundle(format!("{}: c_1 must vanish", b.name)));
    }
    if convention == EvenClassConvention::Additive {
        return Ok(additive_genus(psi, b, ctx));
    }
    let minus_c2 = b.c(2, ctx).neg();
    let mut acc = GradedElt::zero(ctx);
    let mut pow = GradedElt::one(ctx);
    for j in 0..=(psi.order() / 2) {
        if pow.is_zero() {
            break;
        }
        acc = acc.add(&pow.scale(&psi.coeff(2 * j)));
        pow = pow.mul(&minus_c2);
    }
    Ok(acc)
}

/// A top-degree integration functional. Unlisted top monomials integrate to 0.
#[derive(Clone, PartialEq, Debug)]
pub struct IntersectionData {
    ctx: Arc<RingCtx>,
    values: BTreeMap<Monomial, Rat>,
}

impl IntersectionData {
    pub fn new(ctx: &Arc<RingCtx>, values: BTreeMap<Monomial, Rat>) -> Result<Self> {
        for m in values.keys() {
            if m.len() != ctx.generators.len() {
                return Err(Error::InvalidIntersection("monomial length mismatch".into()));
            }
            if ctx.degree(m) != ctx.dim {
                return Err(Error::InvalidIntersection(format!(
                    "{} is not of top degree {}",
                    ctx.format_monomial(m),
                    ctx.dim
                )));
            }
        }
        Ok(IntersectionData { ctx: ctx.clone(), values })
    }

    /// From `(monomial text, value)` pairs, e.g. `("t", -2)`.
    pub fn from_pairs(ctx: &Arc<RingCtx>, pairs: &[(&str, Rat)]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (m, v) in pairs {
            values.insert(ctx.parse_monomial(m)?, v.clone());
        }
        Self::new(ctx, values)
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn value(&self, m: &[u32]) -> Rat {
        self.values.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn values(&self) -> &BTreeMap<Monomial, Rat> {
        &self.values
    }
}

pub fn integrate(e: &GradedElt, data: &IntersectionData) -> Result<Rat> {
    if !(Arc::ptr_eq(e.ctx(), &data.ctx) || **e.ctx() == *data.ctx) {
        return Err(Error::ContextMismatch);
    }
    let dim = data.ctx.dim;
    Ok(e.terms
        .iter()
        .filter(|(m, _)| data.ctx.degree(m) == dim)
        .map(|(m, c)| c * data.value(m))
        .sum())
}

/// Convenience: the Todd class of `b`.
pub fn todd_class(b: &BundleData, ctx: &Arc<RingCtx>) -> GradedElt {
    multiplicative_genus(&crate::series::ps_td(ctx.dim), b, ctx).expect("Td(0) = 1")
}
