//! The κ coefficient of `log |s|²` in every regime where it is computable
//! from finite data, and the scalar identities relating κ, α, δ and β.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::chern::{
    chern_character, even_series_class_with, integrate, multiplicative_genus, BundleData,
    EvenClassConvention, GradedElt, Generator, IntersectionData, RingCtx,
};
use crate::error::{Error, Result};
use crate::rat::{factorial, int, Rat};
use crate::series::{exp_linear, ps_e, ps_f, ps_td};
use crate::singularity::{milnor, spectral_genus_with, Germ, SpectralConvention};

/// `κ = −rk(ξ) Σ_x ( μ(π_x)/(n+2)! − p̃_g(π_x) )` for isolated singularities.
pub fn kappa_ihs(germs: &[Germ], rank: u32, n: usize) -> Result<Rat> {
    kappa_ihs_with(germs, rank, n, SpectralConvention::Steenbrink)
}

pub fn kappa_ihs_with(germs: &[Germ], rank: u32, n: usize, convention: SpectralConvention) -> Result<Rat> {
    if rank == 0 {
        return Err(Error::OutOfRange("rank 0".into()));
    }
    let denom = Rat::from_integer(factorial(n + 2));
    let mut sum = Rat::zero();
    for g in germs {
        if g.nvars() != n + 1 {
            return Err(Error::InvalidGerm(format!(
                "germ in {} variables, expected {} for n = {n}",
                g.nvars(),
                n + 1
            )));
        }
        let mu = int(milnor(g)? as i64);
        sum += mu / &denom - spectral_genus_with(g, convention)?;
    }
    Ok(-int(rank as i64) * sum)
}

/// `κ = r(ξ) (α + ε_π)` when `ξ` is topologically trivial near the singular locus.
pub fn kappa_toptrivial(alpha: &Rat, epsilon: &Rat, rank: u32) -> Rat {
    int(rank as i64) * (alpha + epsilon)
}

/// `κ = (α_f + β) / deg μ` after semi-stable reduction of degree `deg μ`.
pub fn kappa_semistable(alpha_f: &Rat, beta: &Rat, deg_mu: u64) -> Result<Rat> {
    if deg_mu == 0 {
        return Err(Error::OutOfRange("deg μ = 0".into()));
    }
    Ok((alpha_f + beta) / int(deg_mu as i64))
}

/// `κ = α + δ`.
pub fn kappa_decomposition(alpha: &Rat, delta: &Rat) -> Rat {
    alpha + delta
}

/// `δ = (α_f + β)/deg μ − α`.
pub fn delta_from_semistable(alpha_f: &Rat, beta: &Rat, deg_mu: u64, alpha: &Rat) -> Result<Rat> {
    Ok(kappa_semistable(alpha_f, beta, deg_mu)? - alpha)
}

/// Data of a degeneration locally of the form `z_0 z_1` along a compact
/// critical manifold `Σ`: Chern data on `Σ` of `TΣ`, the normal bundle `N`
/// (rank 2, `c_1 = 0`), the coefficient bundle `ξ` and the polarization `H`,
/// plus the twist `m` in `ξ(m) = ξ ⊗ H^m`.
#[derive(Debug, Clone)]
pub struct QuadraticConfig {
    pub ctx: Arc<RingCtx>,
    pub tangent: BundleData,
    pub normal: BundleData,
    pub xi: BundleData,
    pub hyperplane: BundleData,
    pub intersection: IntersectionData,
    pub m: i64,
}

impl QuadraticConfig {
    pub fn new(
        ctx: Arc<RingCtx>,
        tangent: BundleData,
        normal: BundleData,
        xi: BundleData,
        hyperplane: BundleData,
        intersection: IntersectionData,
        m: i64,
    ) -> Result<Self> {
        if ctx.dim() > 0 && tangent.rank() != ctx.dim() {
            return Err(Error::InvalidBundle(format!(
                "tangent bundle of rank {} on a {}-dimensional Σ",
                tangent.rank(),
                ctx.dim()
            )));
        }
        if normal.rank() != 2 || !normal.c(1, &ctx).is_zero() {
            return Err(Error::InvalidBundle("normal bundle must have rank 2 and c_1 = 0".into()));
        }
        if hyperplane.rank() != 1 {
            return Err(Error::InvalidBundle("H must be a line bundle".into()));
        }
        if intersection.ctx() != &ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(QuadraticConfig { ctx, tangent, normal, xi, hyperplane, intersection, m })
    }

    /// `Σ` a connected curve of genus `g`; `ξ` of rank `r` and degree `deg_xi`;
    /// `H` of degree `deg_h`.
    pub fn curve(genus: i64, deg_xi: i64, rank: usize, deg_h: i64, m: i64) -> Result<Self> {
        let ctx = RingCtx::with(1, &[("t", 1), ("x", 1), ("h", 1)])?;
        let g = |n: &str| GradedElt::generator(&ctx, n).expect("declared generator");
        let tangent = BundleData::line("TΣ", g("t"))?;
        let normal = BundleData::new("N", 2, vec![], &ctx)?;
        let xi = BundleData::new("ξ", rank, vec![g("x")], &ctx)?;
        let hyperplane = BundleData::line("H", g("h"))?;
        let intersection = IntersectionData::from_pairs(
            &ctx,
            &[("t", int(2 - 2 * genus)), ("x", int(deg_xi)), ("h", int(deg_h))],
        )?;
        Self::new(ctx, tangent, normal, xi, hyperplane, intersection, m)
    }

    /// `Σ` a finite set of `points` points (possibly empty) with `ξ` of rank `rank`.
    pub fn points(points: u64, rank: usize) -> Result<Self> {
        let ctx = RingCtx::new(0, vec![])?;
        let trivial = BundleData::trivial(&ctx, 1);
        let intersection = IntersectionData::from_pairs(&ctx, &[("1", int(points as i64))])?;
        Self::new(
            ctx.clone(),
            trivial.clone(),
            BundleData::trivial(&ctx, 2),
            BundleData::trivial(&ctx, rank),
            trivial,
            intersection,
            0,
        )
    }

    pub fn with_m(&self, m: i64) -> Self {
        QuadraticConfig { m, ..self.clone() }
    }

    pub fn sigma_dim(&self) -> usize {
        self.ctx.dim()
    }

    /// `ch(K_Σ ⊗ ξ ⊗ H^m) = e^{−c_1(TΣ)} ch(ξ) e^{m c_1(H)}`.
    pub fn twisted_canonical_character(&self) -> Result<GradedElt> {
        let ctx = &self.ctx;
        let k_sigma = self.tangent.c(1, ctx).neg().exp()?;
        let h_m = self.hyperplane.c(1, ctx).apply_series(&exp_linear(&int(self.m), ctx.dim()))?;
        Ok(k_sigma.mul(&chern_character(&self.xi, ctx)).mul(&h_m))
    }
}

/// `κ = −(1/2) ∫_Σ Td(TΣ) E(N) ch(K_Σ(ξ(m)))`.
pub fn kappa_quadratic(cfg: &QuadraticConfig) -> Result<Rat> {
    kappa_quadratic_with(cfg, EvenClassConvention::Substitution)
}

pub fn kappa_quadratic_with(cfg: &QuadraticConfig, convention: EvenClassConvention) -> Result<Rat> {
    let ctx = &cfg.ctx;
    let order = ctx.dim();
    let td = multiplicative_genus(&ps_td(order), &cfg.tangent, ctx)?;
    let e = even_series_class_with(&ps_e(order), &cfg.normal, ctx, convention)?;
    let integrand = td.mul(&e).mul(&cfg.twisted_canonical_character()?);
    Ok(-integrate(&integrand, &cfg.intersection)? / int(2))
}

/// Closed form for a connected curve:
/// `2κ = −E(0) { deg ξ + r(ξ) m deg H + r(ξ)(g − 1) }`.
pub fn kappa_quadratic_curve_closed_form(genus: i64, deg_xi: i64, rank: usize, deg_h: i64, m: i64) -> Rat {
    let e0 = ps_e(0).coeff(0);
    let r = rank as i64;
    let chi = int(deg_xi + r * m * deg_h + r * (genus - 1));
    -e0 * chi / int(2)
}

/// One stratum of the exceptional divisor for the `log |s|²` coefficient:
/// the class `q*{Td(TX) ch(K_X(ξ))}` in the stratum's ring, its integration
/// functional, and the name of the degree-1 generator standing for `c_1(H^∨)`.
#[derive(Debug, Clone)]
pub struct AlphaStratum {
    pub class: GradedElt,
    pub data: IntersectionData,
    pub hyperplane_dual: String,
}

/// `α = Σ_strata ∫ f(c_1(H^∨)) · class` with `f(x) = (Td(x)^{−1} − 1)/x`.
pub fn alpha_eval(strata: &[AlphaStratum]) -> Result<Rat> {
    let mut total = Rat::zero();
    for s in strata {
        let ctx = s.data.ctx();
        let idx = ctx.index_of(&s.hyperplane_dual).ok_or_else(|| {
            Error::InvalidRing(format!("generator {} not declared", s.hyperplane_dual))
        })?;
        if ctx.generators()[idx].degree != 1 {
            return Err(Error::InvalidRing(format!("{} must have degree 1", s.hyperplane_dual)));
        }
        let h = GradedElt::generator(ctx, &s.hyperplane_dual)?;
        let f = h.apply_series(&ps_f(ctx.dim()))?;
        total += integrate(&f.try_mul(&s.class)?, &s.data)?;
    }
    Ok(total)
}

/// Builds the exceptional stratum `E = P(N)` over `Σ` for a quadratic
/// configuration. The ring of `E` is that of `Σ` plus `c_1(H^∨)`; its
/// integration functional pushes powers of `c_1(H^∨)` down to `Σ` with the
/// normalization `p_*(c_1(H^∨)^{2j+1}) = −(1/2)(−c_2(N))^j` and
/// `p_*(c_1(H^∨)^{2j}) = 0`, so that `p_* f(c_1(H^∨)) = −(1/2) f₋(N)`.
pub fn quadratic_alpha_stratum(cfg: &QuadraticConfig) -> Result<AlphaStratum> {
    let sigma = &cfg.ctx;
    let mut name = String::from("hdual");
    while sigma.index_of(&name).is_some() {
        name.push('_');
    }
    let mut gens = sigma.generators().to_vec();
    gens.push(Generator { name: name.clone(), degree: 1 });
    let e_ctx = RingCtx::new(sigma.dim() + 1, gens)?;
    let h_idx = e_ctx.generators().len() - 1;

    let minus_c2 = cfg.normal.c(2, sigma).neg();
    let half = Rat::new(1.into(), 2.into());
    let mut values = std::collections::BTreeMap::new();
    for mono in e_ctx.monomials_of_degree(e_ctx.dim()) {
        let k = mono[h_idx] as usize;
        if k % 2 == 0 {
            continue;
        }
        let base = GradedElt::monomial(sigma, mono[..h_idx].to_vec(), Rat::one());
        let pushed = minus_c2.pow((k - 1) / 2).mul(&base);
        let v = -&half * integrate(&pushed, &cfg.intersection)?;
        if !v.is_zero() {
            values.insert(mono, v);
        }
    }
    let data = IntersectionData::new(&e_ctx, values)?;

    let order = sigma.dim();
    let td_n = multiplicative_genus(&ps_td(order), &cfg.normal, sigma)?;
    let e_c1n = cfg.normal.c(1, sigma).neg().exp()?;
    let td_t = multiplicative_genus(&ps_td(order), &cfg.tangent, sigma)?;
    let class = td_n.mul(&e_c1n).mul(&td_t).mul(&cfg.twisted_canonical_character()?);
    Ok(AlphaStratum { class: class.embed(&e_ctx)?, data, hyperplane_dual: name })
}

/// A polynomial in `m` with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoly {
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, m: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * m + c)
    }

    /// Exact interpolation through `(x_i, y_i)` with distinct nodes.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Result<Self> {
        let n = points.len();
        for i in 0..n {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::Domain("repeated interpolation node".into()));
                }
            }
        }
        // Newton divided differences, then expand to the monomial basis.
        let xs: Vec<Rat> = points.iter().map(|p| p.0.clone()).collect();
        let mut dd: Vec<Rat> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        let mut coeffs = vec![Rat::zero(); n.max(1)];
        for i in (0..n).rev() {
            // coeffs = coeffs * (m − x_i) + dd[i]
            let mut next = vec![Rat::zero(); n.max(1)];
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k + 1 < next.len() {
                    next[k + 1] += c;
                }
                next[k] -= c * &xs[i];
            }
            next[0] += &dd[i];
            coeffs = next;
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = crate::rat::format_rat(c);
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*m")?,
                _ => write!(f, "({c})*m^{k}")?,
            }
        }
        Ok(())
    }
}

/// Interpolates `m ↦ κ(ξ(m))` through the given `m` values and checks that
/// the result has degree `≤ dim Σ` and reproduces every sample.
pub fn kappa_polynomial_in_m(cfg: &QuadraticConfig, m_values: &[i64]) -> Result<RationalPoly> {
    let dim = cfg.sigma_dim();
    if m_values.len() < dim + 2 {
        return Err(Error::OutOfRange(format!(
            "{} interpolation points; at least {} needed",
            m_values.len(),
            dim + 2
        )));
    }
    let points: Vec<(Rat, Rat)> = m_values
        .iter()
        .map(|&m| Ok((int(m), kappa_quadratic(&cfg.with_m(m))?)))
        .collect::<Result<_>>()?;
    let p = RationalPoly::interpolate(&points)?;
    if p.degree().is_some_and(|d| d > dim) {
        return Err(Error::Invariant(format!(
            "κ(m) has degree {} > dim Σ = {dim}",
            p.degree().unwrap_or(0)
        )));
    }
    Ok(p)
}

/// Default interpolation nodes `m = 0..2 dim Σ + 4`.
pub fn default_m_range(cfg: &QuadraticConfig) -> Vec<i64> {
    (0..(2 * cfg.sigma_dim() as i64 + 4)).collect()
}
