//! Problem files: `{"schemaVersion": 1, <exactly one payload>}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use torsion_core::chern::{BundleData, Generator, GradedElt, IntersectionData, RingCtx};
use torsion_core::hodge::{ColengthSpec, MonodromySpec};
use torsion_core::kappa::QuadraticConfig;
use torsion_core::rat::parse_rat;
use torsion_core::singularity::{Germ, Polynomial};
use torsion_core::Rat;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ProblemFile {
    pub schema_version: u32,
    pub germs: Option<GermsPayload>,
    pub monodromy: Option<MonodromyPayload>,
    pub colength: Option<ColengthPayload>,
    pub quadratic: Option<QuadraticPayload>,
    pub semistable: Option<SemistablePayload>,
    pub curvature: Option<CurvaturePayload>,
}

#[derive(Debug)]
pub enum Payload {
    Germs(GermsPayload),
    Monodromy(MonodromyPayload),
    Colength(ColengthPayload),
    Quadratic(QuadraticPayload),
    Semistable(SemistablePayload),
    Curvature(CurvaturePayload),
}

impl Payload {
    pub fn name(&self) -> &'static str {
        match self {
            Payload::Germs(_) => "germs",
            Payload::Monodromy(_) => "monodromy",
            Payload::Colength(_) => "colength",
            Payload::Quadratic(_) => "quadratic",
            Payload::Semistable(_) => "semistable",
            Payload::Curvature(_) => "curvature",
        }
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> CliResult<Payload> {
        let file: ProblemFile = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::input(format!(
                "unsupported schemaVersion {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        let mut payloads = Vec::new();
        if let Some(p) = file.germs {
            payloads.push(Payload::Germs(p));
        }
        if let Some(p) = file.monodromy {
            payloads.push(Payload::Monodromy(p));
        }
        if let Some(p) = file.colength {
            payloads.push(Payload::Colength(p));
        }
        if let Some(p) = file.quadratic {
            payloads.push(Payload::Quadratic(p));
        }
        if let Some(p) = file.semistable {
            payloads.push(Payload::Semistable(p));
        }
        if let Some(p) = file.curvature {
            payloads.push(Payload::Curvature(p));
        }
        match payloads.len() {
            1 => Ok(payloads.pop().expect("one payload")),
            0 => Err(CliError::input("problem file has no payload")),
            n => Err(CliError::input(format!("problem file has {n} payloads; exactly one is allowed"))),
        }
    }

    pub fn load(path: &Path) -> CliResult<Payload> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

fn rat_field(s: &str, what: &str) -> CliResult<Rat> {
    parse_rat(s).map_err(|e| CliError::input(format!("{what}: {e}")))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct GermsPayload {
    /// Fiber dimension; defaults to that of the germs.
    pub n: Option<usize>,
    pub rank: Option<u32>,
    pub list: Vec<GermSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase", deny_unknown_fields)]
pub enum GermSpec {
    #[serde(rename_all = "camelCase")]
    BrieskornPham { exponents: Vec<u32> },
    #[serde(rename_all = "camelCase")]
    QuasiHomogeneous { weights: Vec<String>, polynomial: String },
    #[serde(rename_all = "camelCase")]
    Newton { vertices: Vec<Vec<u32>> },
    #[serde(rename_all = "camelCase")]
    Explicit { nvars: usize, polynomial: String, degree_bound: usize },
}

impl GermSpec {
    pub fn build(&self) -> CliResult<Germ> {
        Ok(match self {
            GermSpec::BrieskornPham { exponents } => Germ::brieskorn_pham(exponents.clone())?,
            GermSpec::QuasiHomogeneous { weights, polynomial } => {
                let w = weights.iter().map(|s| rat_field(s, "weight")).collect::<CliResult<Vec<_>>>()?;
                Germ::quasi_homogeneous(w.clone(), Polynomial::parse(polynomial, w.len())?)?
            }
            GermSpec::Newton { vertices } => Germ::newton_convenient(vertices.clone())?,
            GermSpec::Explicit { nvars, polynomial, degree_bound } => {
                Germ::explicit(Polynomial::parse(polynomial, *nvars)?, *degree_bound)?
            }
        })
    }
}

impl GermsPayload {
    pub fn build(&self) -> CliResult<Vec<Germ>> {
        if self.list.is_empty() {
            return Err(CliError::input("empty germ list"));
        }
        self.list.iter().map(GermSpec::build).collect()
    }

    pub fn fiber_dim(&self, germs: &[Germ]) -> CliResult<usize> {
        match self.n {
            Some(n) => Ok(n),
            None => {
                let n = germs[0].fiber_dim();
                if germs.iter().any(|g| g.fiber_dim() != n) {
                    return Err(CliError::input("germs of different dimensions; give `n` explicitly"));
                }
                Ok(n)
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct MonodromyPayload {
    pub n: usize,
    pub per_degree: BTreeMap<String, Vec<String>>,
}

fn degree_key(k: &str) -> CliResult<usize> {
    k.parse().map_err(|_| CliError::input(format!("bad degree key {k:?}")))
}

impl MonodromyPayload {
    pub fn build(&self) -> CliResult<MonodromySpec> {
        let mut per = BTreeMap::new();
        for (k, v) in &self.per_degree {
            let angles = v.iter().map(|s| rat_field(s, "angle")).collect::<CliResult<Vec<_>>>()?;
            per.insert(degree_key(k)?, angles);
        }
        Ok(MonodromySpec::new(self.n, per)?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ColengthPayload {
    pub deg_mu: u64,
    pub per_degree: BTreeMap<String, u64>,
}

impl ColengthPayload {
    pub fn build(&self) -> CliResult<ColengthSpec> {
        let mut per = BTreeMap::new();
        for (k, v) in &self.per_degree {
            per.insert(degree_key(k)?, *v);
        }
        Ok(ColengthSpec::new(self.deg_mu, per)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
pub enum QuadraticPayload {
    #[serde(rename_all = "camelCase")]
    Curve { genus: i64, deg_xi: i64, rank: usize, deg_h: i64, m: i64 },
    #[serde(rename_all = "camelCase")]
    General {
        dim: usize,
        generators: Vec<Generator>,
        tangent: BundleSpec,
        normal: BundleSpec,
        xi: BundleSpec,
        hyperplane: BundleSpec,
        intersection: BTreeMap<String, String>,
        m: i64,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    pub rank: usize,
    #[serde(default)]
    pub chern: Vec<String>,
}

impl BundleSpec {
    fn build(&self, name: &str, ctx: &std::sync::Arc<RingCtx>) -> CliResult<BundleData> {
        let classes = self
            .chern
            .iter()
            .map(|s| GradedElt::parse(ctx, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BundleData::new(name, self.rank, classes, ctx)?)
    }
}

impl QuadraticPayload {
    pub fn build(&self) -> CliResult<QuadraticConfig> {
        match self {
            QuadraticPayload::Curve { genus, deg_xi, rank, deg_h, m } => {
                Ok(QuadraticConfig::curve(*genus, *deg_xi, *rank, *deg_h, *m)?)
            }
            QuadraticPayload::General { dim, generators, tangent, normal, xi, hyperplane, intersection, m } => {
                let ctx = RingCtx::new(*dim, generators.clone())?;
                let pairs = intersection
                    .iter()
                    .map(|(k, v)| Ok((k.as_str(), rat_field(v, "intersection value")?)))
                    .collect::<CliResult<Vec<_>>>()?;
                let data = IntersectionData::from_pairs(&ctx, &pairs)?;
                Ok(QuadraticConfig::new(
                    ctx.clone(),
                    tangent.build("TΣ", &ctx)?,
                    normal.build("N", &ctx)?,
                    xi.build("ξ", &ctx)?,
                    hyperplane.build("H", &ctx)?,
                    data,
                    *m,
                )?)
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SemistablePayload {
    pub alpha_f: String,
    pub beta: String,
    pub deg_mu: u64,
    pub alpha: Option<String>,
}

impl SemistablePayload {
    pub fn build(&self) -> CliResult<(Rat, Rat, u64, Option<Rat>)> {
        Ok((
            rat_field(&self.alpha_f, "alphaF")?,
            rat_field(&self.beta, "beta")?,
            self.deg_mu,
            self.alpha.as_deref().map(|s| rat_field(s, "alpha")).transpose()?,
        ))
    }
}

/// `g(t) = Σ (log|t|²)^{ell} φ(t)` with each `φ` a polynomial in `|t|²`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct CurvaturePayload {
    pub terms: Vec<CurvatureTerm>,
    pub grid: RadialGrid,
    /// Fail (exit 3) if the scaled remainder exceeds this on the grid.
    pub bound: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct CurvatureTerm {
    pub ell: u32,
    /// Coefficients of `φ` in powers of `|t|²`, lowest first.
    pub phi: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct RadialGrid {
    pub from: f64,
    pub to: f64,
    pub count: usize,
}

impl RadialGrid {
    /// Log-spaced moduli with a rotating argument.
    pub fn points(&self) -> CliResult<Vec<num_complex::Complex64>> {
        if !(self.from > 0.0 && self.to < 1.0 && self.from <= self.to) || self.count == 0 {
            return Err(CliError::input("grid must satisfy 0 < from ≤ to < 1 and count ≥ 1"));
        }
        let (a, b) = (self.from.ln(), self.to.ln());
        Ok((0..self.count)
            .map(|k| {
                let s = if self.count > 1 { k as f64 / (self.count - 1) as f64 } else { 0.0 };
                num_complex::Complex64::from_polar((a + s * (b - a)).exp(), 0.7 * k as f64)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_one_payload() {
        let ok = r#"{"schemaVersion":1,"germs":{"list":[{"type":"brieskornPham","exponents":[2,2]}]}}"#;
        assert_eq!(ProblemFile::parse(ok).unwrap().name(), "germs");
        let none = r#"{"schemaVersion":1}"#;
        assert!(ProblemFile::parse(none).is_err());
        let two = r#"{"schemaVersion":1,"germs":{"list":[]},"semistable":{"alphaF":"0","beta":"0","degMu":1}}"#;
        assert!(ProblemFile::parse(two).is_err());
        let version = r#"{"schemaVersion":9,"germs":{"list":[]}}"#;
        assert!(ProblemFile::parse(version).is_err());
        let unknown = r#"{"schemaVersion":1,"gems":{}}"#;
        assert!(ProblemFile::parse(unknown).is_err());
    }

    #[test]
    fn germ_specs() {
        let text = r#"{"schemaVersion":1,"germs":{"list":[
            {"type":"brieskornPham","exponents":[2,3]},
            {"type":"quasiHomogeneous","weights":["1/3","1/3"],"polynomial":"x^2*y + y^3"},
            {"type":"newton","vertices":[[2,0],[0,3]]},
            {"type":"explicit","nvars":2,"polynomial":"x^3 + y^3","degreeBound":6}]}}"#;
        let Payload::Germs(g) = ProblemFile::parse(text).unwrap() else { panic!() };
        assert_eq!(g.build().unwrap().len(), 4);
    }
}
