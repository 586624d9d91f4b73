//! Bundled reference corpus and its self-check.
//!
//! Each germ entry stores `μ`, the spectrum and `p̃_g`; each quadratic entry
//! stores `κ` for a curve configuration. The check re-derives everything
//! through routes other than the ones used to produce the file and reports
//! one diff per disagreeing entry.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use torsion_core::kappa::{alpha_eval, kappa_quadratic, kappa_quadratic_curve_closed_form, quadratic_alpha_stratum, QuadraticConfig};
use torsion_core::rat::{format_rat, parse_rat, Rat};
use torsion_core::singularity::spectrum::quasi_homogeneous_spectrum;
use torsion_core::singularity::{spectral_genus_of, Germ, Polynomial, SpectralConvention, Spectrum};

use crate::commands::{milnor_routes, SRC_ALPHA, SRC_CURVE, SRC_KAPPA_QUAD, SRC_ORLIK, SRC_PG_STEENBRINK, SRC_SPECTRUM};
use crate::error::{CliError, CliResult};
use crate::report::Report;
use crate::Done;

pub const BUNDLED: &str = include_str!("../corpus/corpus.json");
pub const CORPUS_ENV: &str = "TORSION_CORPUS_DIR";
pub const CORPUS_FILE: &str = "corpus.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Corpus {
    pub schema_version: u32,
    #[serde(default)]
    pub germs: Vec<GermEntry>,
    #[serde(default)]
    pub quadratic: Vec<QuadraticEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermEntry {
    pub exponents: Vec<u32>,
    pub milnor: usize,
    pub spectrum: Vec<String>,
    pub pg: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct QuadraticEntry {
    pub genus: i64,
    pub deg_xi: i64,
    pub rank: usize,
    pub deg_h: i64,
    pub m: i64,
    pub kappa: String,
}

impl Corpus {
    pub fn parse(text: &str) -> CliResult<Self> {
        let c: Corpus = serde_json::from_str(text)?;
        if c.schema_version != crate::problem::SCHEMA_VERSION {
            return Err(CliError::input(format!("unsupported corpus schemaVersion {}", c.schema_version)));
        }
        Ok(c)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled corpus parses")
    }
}

/// Explicit path, then `$TORSION_CORPUS_DIR/corpus.json`, then the bundled copy.
pub fn locate(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CORPUS_ENV).map(|d| PathBuf::from(d).join(CORPUS_FILE)))
}

pub fn load(explicit: Option<&Path>) -> CliResult<(Corpus, String)> {
    match locate(explicit) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::input(format!("corpus {}: {e}", path.display())))?;
            Ok((Corpus::parse(&text)?, path.display().to_string()))
        }
        None => Ok((Corpus::bundled(), "bundled".into())),
    }
}

fn mismatch(stored: Value, derived: Value, source: &str) -> Value {
    json!({"stored": stored, "derived": derived, "source": source})
}

fn rat_strings(qs: &[Rat]) -> Value {
    Value::Array(qs.iter().map(|q| Value::String(format_rat(q))).collect())
}

/// Mismatched fields of one germ entry, keyed by field name.
pub fn check_germ(entry: &GermEntry) -> BTreeMap<String, Value> {
    let mut out = BTreeMap::new();
    let germ = match Germ::brieskorn_pham(entry.exponents.clone()) {
        Ok(g) => g,
        Err(e) => {
            out.insert("exponents".into(), json!({"error": e.to_string()}));
            return out;
        }
    };

    // weights 1/a_i with the defining polynomial rebuilt as a generic
    // quasi-homogeneous germ, so the closed forms are not reused
    let weights: Vec<Rat> = entry.exponents.iter().map(|&a| Rat::new(1.into(), (a as i64).into())).collect();
    let poly = Polynomial::brieskorn_pham(&entry.exponents);

    match milnor_routes(&germ) {
        Ok(mut routes) => {
            if let Ok(mu) = torsion_core::singularity::spectrum::milnor_orlik(&weights) {
                routes.insert(SRC_ORLIK, mu);
            }
            let values: Vec<usize> = routes.values().copied().collect();
            if values.iter().any(|&m| m != values[0]) {
                out.insert("milnor".into(), json!({"stored": entry.milnor, "routes": routes}));
            } else if values[0] != entry.milnor {
                out.insert("milnor".into(), mismatch(json!(entry.milnor), json!(values[0]), "Kouchnirenko, Macaulay, Milnor–Orlik and closed form"));
            }
        }
        Err(e) => {
            out.insert("milnor".into(), json!({"error": e.message}));
        }
    }

    let derived = quasi_homogeneous_spectrum(&weights, &poly)
        .map_err(|e| e.to_string())
        .and_then(|s| Spectrum::new(germ.fiber_dim(), s).map_err(|e| e.to_string()));
    let derived = match derived {
        Ok(sp) => sp,
        Err(e) => {
            out.insert("spectrum".into(), json!({"error": e}));
            return out;
        }
    };
    let stored: Result<Vec<Rat>, _> = entry.spectrum.iter().map(|s| parse_rat(s)).collect();
    match stored {
        Ok(mut stored) => {
            stored.sort();
            if stored != derived.entries() {
                out.insert("spectrum".into(), mismatch(json!(entry.spectrum), rat_strings(derived.entries()), SRC_SPECTRUM));
            }
        }
        Err(e) => {
            out.insert("spectrum".into(), json!({"error": e.to_string()}));
        }
    }

    let pg = spectral_genus_of(&derived, SpectralConvention::Steenbrink);
    match parse_rat(&entry.pg) {
        Ok(stored) if stored == pg => {}
        Ok(_) => {
            out.insert("pg".into(), mismatch(json!(entry.pg), json!(format_rat(&pg)), SRC_PG_STEENBRINK));
        }
        Err(e) => {
            out.insert("pg".into(), json!({"error": e.to_string()}));
        }
    }
    out
}

pub fn check_quadratic(entry: &QuadraticEntry) -> BTreeMap<String, Value> {
    let mut out = BTreeMap::new();
    let derived = QuadraticConfig::curve(entry.genus, entry.deg_xi, entry.rank, entry.deg_h, entry.m)
        .and_then(|cfg| Ok((kappa_quadratic(&cfg)?, alpha_eval(&[quadratic_alpha_stratum(&cfg)?])?)));
    let (kappa, alpha) = match derived {
        Ok(v) => v,
        Err(e) => {
            out.insert("configuration".into(), json!({"error": e.to_string()}));
            return out;
        }
    };
    let closed = kappa_quadratic_curve_closed_form(entry.genus, entry.deg_xi, entry.rank, entry.deg_h, entry.m);
    if alpha != kappa {
        out.insert("alpha".into(), mismatch(json!(format_rat(&kappa)), json!(format_rat(&alpha)), SRC_ALPHA));
    }
    if closed != kappa {
        out.insert("closedForm".into(), mismatch(json!(format_rat(&kappa)), json!(format_rat(&closed)), SRC_CURVE));
    }
    match parse_rat(&entry.kappa) {
        Ok(stored) if stored == kappa => {}
        Ok(_) => {
            out.insert("kappa".into(), mismatch(json!(entry.kappa), json!(format_rat(&kappa)), SRC_KAPPA_QUAD));
        }
        Err(e) => {
            out.insert("kappa".into(), json!({"error": e.to_string()}));
        }
    }
    out
}

pub fn run_check(corpus: &Corpus, origin: &str) -> Done {
    use rayon::prelude::*;
    let germ_diffs: Vec<_> = corpus.germs.par_iter().map(check_germ).collect();
    let quad_diffs: Vec<_> = corpus.quadratic.par_iter().map(check_quadratic).collect();

    let mut diffs = Vec::new();
    for (i, (entry, fields)) in corpus.germs.iter().zip(germ_diffs).enumerate() {
        if !fields.is_empty() {
            diffs.push(json!({"entry": format!("germs[{i}]"), "exponents": entry.exponents, "fields": fields}));
        }
    }
    for (i, fields) in quad_diffs.into_iter().enumerate() {
        if !fields.is_empty() {
            diffs.push(json!({"entry": format!("quadratic[{i}]"), "fields": fields}));
        }
    }

    let bad = diffs.len();
    let mut report = Report::new();
    report
        .value("corpus", json!(origin))
        .number("germsChecked", corpus.germs.len(), "corpus")
        .number("quadraticChecked", corpus.quadratic.len(), "corpus")
        .number("mismatches", bad, "entries with at least one disagreeing field")
        .value("diffs", Value::Array(diffs));
    if corpus.germs.is_empty() && corpus.quadratic.is_empty() {
        report.warn("corpus is empty; nothing was checked");
    }
    if bad > 0 {
        Done::invariant(report)
    } else {
        Done::ok(report)
    }
}

pub fn corpus_check(explicit: Option<&Path>) -> CliResult<Done> {
    let (corpus, origin) = load(explicit)?;
    Ok(run_check(&corpus, &origin))
}
