use std::collections::BTreeMap;
use std::fs::File;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};
use torsion_core::asymptotics::{
    bt_det_fit, bt_rho, curvature_check, fit_with, GTerm, Sample, DEFAULT_RHO_TOLERANCE,
};
use torsion_core::elliptic::{
    eta_auto, node_tate_grid, sample_family, torus_log_det_unit_area, FamilyKind,
};
use torsion_core::hodge::{delta_from_colength, delta_q, epsilon_pi, MonodromySpec};
use torsion_core::kappa::{
    alpha_eval, default_m_range, delta_from_semistable, kappa_decomposition, kappa_ihs_with,
    kappa_polynomial_in_m, kappa_quadratic, kappa_quadratic_curve_closed_form, kappa_semistable,
    quadratic_alpha_stratum,
};
use torsion_core::rat::{format_rat, int, rat, Rat};
use torsion_core::singularity::macaulay::milnor_macaulay;
use torsion_core::singularity::newton::kouchnirenko_milnor;
use torsion_core::singularity::spectrum::milnor_orlik;
use torsion_core::singularity::{
    milnor, monodromy_angles, spectral_genus_of, spectrum, top_hodge_angles, Germ, SpectralConvention,
};

use crate::corpus;
use crate::csvio::{read_samples, write_samples};
use crate::error::{CliError, CliResult};
use crate::problem::{Payload, ProblemFile, QuadraticPayload};
use crate::report::{decimal, Report};
use crate::{Command, Done, GlobalOpts};

pub const SRC_BP: &str = "Brieskorn–Pham closed form Π(a_i − 1)";
pub const SRC_KOUCHNIRENKO: &str = "Kouchnirenko formula Σ(−1)^{n+1−k} k! V_k";
pub const SRC_MACAULAY: &str = "Macaulay matrix dim O/(∂f) truncated at D and D+2";
pub const SRC_ORLIK: &str = "Milnor–Orlik formula Π(1/w_i − 1)";
pub const SRC_SPECTRUM: &str = "quasi-homogeneous spectrum from monomial basis weights";
pub const SRC_PG_STEENBRINK: &str = "p̃_g = Σ_{α<1} (1 − α)";
pub const SRC_PG_ALT: &str = "p̃_g = Σ_{α<1} α";
pub const SRC_KAPPA_IHS: &str = "κ = −rank Σ_x (μ_x/(n+2)! − p̃_g,x)";
pub const SRC_KAPPA_QUAD: &str = "κ = −(1/2) ∫_Σ Td(TΣ) E(N) ch(K_Σ ⊗ ξ ⊗ H^m)";
pub const SRC_ALPHA: &str = "α = ∫_{P(N)} f(c_1(H^∨)) q*{Td ch}";
pub const SRC_CURVE: &str = "curve closed form −(1/12)(deg ξ + r m deg H + r(g − 1))";

pub fn dispatch(cmd: &Command, opts: &GlobalOpts) -> CliResult<Done> {
    match cmd {
        Command::Milnor { problem } => milnor_cmd(&load_germs(problem)?),
        Command::Spectrum { problem } => spectrum_cmd(&load_germs(problem)?),
        Command::SpectralGenus { problem } => spectral_genus_cmd(&load_germs(problem)?, opts.convention.into()),
        Command::KappaIhs { problem } => kappa_ihs_cmd(problem, opts),
        Command::KappaQuadratic { problem } => kappa_quadratic_cmd(problem, opts),
        Command::KappaSemistable { problem } => kappa_semistable_cmd(problem),
        Command::Exponents { problem } => exponents_cmd(problem),
        Command::Fit { csv, with_c } => fit_cmd(csv, *with_c, opts),
        Command::BtFit { csv, degree } => bt_fit_cmd(csv, *degree, opts),
        Command::CurvatureCheck { problem } => curvature_cmd(problem),
        Command::EllipticVerify { im_tau_min, im_tau_max, count, csv } => {
            elliptic_cmd(*im_tau_min, *im_tau_max, *count, csv.as_deref())
        }
        Command::CorpusCheck { corpus } => corpus::corpus_check(corpus.as_deref()),
    }
}

fn load_germs(path: &Path) -> CliResult<Vec<Germ>> {
    match ProblemFile::load(path)? {
        Payload::Germs(g) => g.build(),
        other => Err(CliError::input(format!("expected a germs payload, found {}", other.name()))),
    }
}

/// Degree bound past the socle of the Jacobian algebra, from weights.
fn macaulay_bound(g: &Germ) -> Option<usize> {
    match g {
        Germ::BrieskornPham { exponents } => Some(exponents.iter().map(|&a| a as usize - 2).sum::<usize>() + 1),
        Germ::QuasiHomogeneous { weights, .. } => {
            let socle: Rat = weights.iter().map(|w| int(1) - int(2) * w).sum();
            let wmin = weights.iter().min()?;
            Some((socle / wmin).floor().to_integer().try_into().ok().map(|d: usize| d + 1)?)
        }
        Germ::Explicit { degree_bound, .. } => Some(*degree_bound),
        Germ::NewtonConvenient { .. } => None,
    }
}

/// `μ` by every route that applies to this germ.
pub fn milnor_routes(g: &Germ) -> CliResult<BTreeMap<&'static str, usize>> {
    let mut out = BTreeMap::new();
    match g {
        Germ::BrieskornPham { exponents } => {
            out.insert(SRC_BP, milnor(g)?);
            let n = exponents.len();
            let vertices: Vec<Vec<u32>> = (0..n)
                .map(|i| (0..n).map(|j| if i == j { exponents[i] } else { 0 }).collect())
                .collect();
            out.insert(SRC_KOUCHNIRENKO, kouchnirenko_milnor(&vertices)? as usize);
        }
        Germ::QuasiHomogeneous { weights, .. } => {
            out.insert(SRC_ORLIK, milnor_orlik(weights)?);
        }
        Germ::NewtonConvenient { vertices } => {
            out.insert(SRC_KOUCHNIRENKO, kouchnirenko_milnor(vertices)? as usize);
        }
        Germ::Explicit { .. } => {}
    }
    if let (Some(f), Some(bound)) = (g.polynomial(), macaulay_bound(g)) {
        out.insert(SRC_MACAULAY, milnor_macaulay(&f, bound)?);
    }
    Ok(out)
}

fn milnor_cmd(germs: &[Germ]) -> CliResult<Done> {
    let mut results = Vec::new();
    let mut agree = true;
    for g in germs {
        let routes = milnor_routes(g)?;
        let first = *routes.values().next().expect("every germ has a route");
        let same = routes.values().all(|&m| m == first);
        agree &= same;
        let mut r = Report::new();
        r.value("kind", json!(g.kind()));
        r.number("milnor", first, routes.keys().next().expect("route"));
        r.value("routes", json!(routes));
        r.value("agree", json!(same));
        results.push(r.to_json());
    }
    let mut report = Report::new();
    report.value("results", Value::Array(results));
    Ok(if agree { Done::ok(report) } else { Done::invariant(report) })
}

fn spectrum_cmd(germs: &[Germ]) -> CliResult<Done> {
    let mut results = Vec::new();
    let mut ok = true;
    for g in germs {
        let sp = spectrum(g)?;
        let mu = milnor(g)?;
        let symmetric = sp.is_symmetric();
        let sized = sp.len() == mu;
        ok &= symmetric && sized;
        let mut r = Report::new();
        r.value("kind", json!(g.kind()));
        r.exact_list("spectrum", sp.entries(), SRC_SPECTRUM);
        r.number("milnor", mu, "milnor number of the germ");
        r.value("symmetric", json!(symmetric));
        if !symmetric {
            r.warn("spectrum is not symmetric under α ↦ n + 1 − α");
        }
        if !sized {
            r.warn(format!("|Sp| = {} but μ = {mu}", sp.len()));
        }
        results.push(r.to_json());
    }
    let mut report = Report::new();
    report.value("results", Value::Array(results));
    Ok(if ok { Done::ok(report) } else { Done::invariant(report) })
}

fn pg_source(c: SpectralConvention) -> &'static str {
    match c {
        SpectralConvention::Steenbrink => SRC_PG_STEENBRINK,
        SpectralConvention::Alt => SRC_PG_ALT,
    }
}

fn convention_name(c: SpectralConvention) -> &'static str {
    match c {
        SpectralConvention::Steenbrink => "steenbrink",
        SpectralConvention::Alt => "alt",
    }
}

fn spectral_genus_cmd(germs: &[Germ], convention: SpectralConvention) -> CliResult<Done> {
    let mut results = Vec::new();
    for g in germs {
        let pg = spectral_genus_of(&spectrum(g)?, convention);
        let mut r = Report::new();
        r.value("kind", json!(g.kind()));
        r.exact("pg", &pg, pg_source(convention));
        r.float("pgDecimal", torsion_core::rat::to_f64(&pg), pg_source(convention));
        results.push(r.to_json());
    }
    let mut report = Report::new();
    report.value("convention", json!(convention_name(convention)));
    report.value("results", Value::Array(results));
    Ok(Done::ok(report))
}

fn kappa_ihs_cmd(path: &Path, opts: &GlobalOpts) -> CliResult<Done> {
    let payload = match ProblemFile::load(path)? {
        Payload::Germs(g) => g,
        other => return Err(CliError::input(format!("expected a germs payload, found {}", other.name()))),
    };
    let germs = payload.build()?;
    let n = payload.fiber_dim(&germs)?;
    let rank = payload.rank.unwrap_or(1);
    let convention: SpectralConvention = opts.convention.into();
    let kappa = kappa_ihs_with(&germs, rank, n, convention)?;

    let mut per = Vec::new();
    for g in &germs {
        let mut r = Report::new();
        r.number("milnor", milnor(g)?, "milnor number of the germ");
        r.exact("pg", &spectral_genus_of(&spectrum(g)?, convention), pg_source(convention));
        per.push(r.to_json());
    }
    let mut report = Report::new();
    report.exact("kappa", &kappa, SRC_KAPPA_IHS);
    report.float("kappaDecimal", torsion_core::rat::to_f64(&kappa), SRC_KAPPA_IHS);
    report.number("n", n, "input");
    report.number("rank", rank, "input");
    report.value("convention", json!(convention_name(convention)));
    report.value("germs", Value::Array(per));
    // −κ > 0 for curves degenerating with isolated singularities
    if n == 1 && convention == SpectralConvention::Steenbrink && kappa >= int(0) {
        report.warn("κ ≥ 0 for a curve degeneration; expected κ < 0");
        return Ok(Done::invariant(report));
    }
    Ok(Done::ok(report))
}

fn kappa_quadratic_cmd(path: &Path, opts: &GlobalOpts) -> CliResult<Done> {
    let payload = match ProblemFile::load(path)? {
        Payload::Quadratic(q) => q,
        other => return Err(CliError::input(format!("expected a quadratic payload, found {}", other.name()))),
    };
    let cfg = payload.build()?;
    let dim = cfg.sigma_dim();
    if let Some(order) = opts.order {
        if order < dim {
            return Err(CliError::input(format!("--order {order} is below dim Σ = {dim}")));
        }
    }
    let kappa = kappa_quadratic(&cfg)?;
    let alpha = alpha_eval(&[quadratic_alpha_stratum(&cfg)?])?;
    let poly = kappa_polynomial_in_m(&cfg, &default_m_range(&cfg))?;

    let mut report = Report::new();
    report.exact("kappa", &kappa, SRC_KAPPA_QUAD);
    report.float("kappaDecimal", torsion_core::rat::to_f64(&kappa), SRC_KAPPA_QUAD);
    report.exact("alpha", &alpha, SRC_ALPHA);
    report.exact_list("kappaPolynomial", poly.coeffs(), "interpolation of κ(m) over m = 0..2 dim Σ + 3");
    report.number("sigmaDim", dim, "input");
    let mut ok = true;
    if alpha != kappa {
        report.warn(format!("α = {} differs from κ", format_rat(&alpha)));
        ok = false;
    }
    if let QuadraticPayload::Curve { genus, deg_xi, rank, deg_h, m } = payload {
        let closed = kappa_quadratic_curve_closed_form(genus, deg_xi, rank, deg_h, m);
        if closed != kappa {
            report.warn(format!("closed form {} differs from κ", format_rat(&closed)));
            ok = false;
        }
        report.exact("closedForm", &closed, SRC_CURVE);
    }
    Ok(if ok { Done::ok(report) } else { Done::invariant(report) })
}

fn kappa_semistable_cmd(path: &Path) -> CliResult<Done> {
    let payload = match ProblemFile::load(path)? {
        Payload::Semistable(s) => s,
        other => return Err(CliError::input(format!("expected a semistable payload, found {}", other.name()))),
    };
    let (alpha_f, beta, deg_mu, alpha) = payload.build()?;
    let kappa = kappa_semistable(&alpha_f, &beta, deg_mu)?;
    let mut report = Report::new();
    report.exact("kappa", &kappa, "κ = (α_f + β)/deg μ");
    if let Some(alpha) = alpha {
        let delta = delta_from_semistable(&alpha_f, &beta, deg_mu, &alpha)?;
        if kappa_decomposition(&alpha, &delta) != kappa {
            return Err(CliError::invariant("κ ≠ α + δ"));
        }
        report.exact("alpha", &alpha, "input");
        report.exact("delta", &delta, "δ = (α_f + β)/deg μ − α");
    }
    Ok(Done::ok(report))
}

fn rat_map(m: &BTreeMap<usize, Rat>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), Value::String(format_rat(v)))).collect())
}

fn exponents_cmd(path: &Path) -> CliResult<Done> {
    let mut report = Report::new();
    match ProblemFile::load(path)? {
        Payload::Monodromy(m) => {
            let spec = m.build()?;
            let deltas = (0..=spec.n()).map(|q| Ok((q, delta_q(&spec, q)?))).collect::<CliResult<BTreeMap<_, _>>>()?;
            report.value("deltaQ", rat_map(&deltas)).source("deltaQ", "δ^q = Σ elementary exponents in degree q");
            report.exact("epsilon", &epsilon_pi(&spec), "ε = Σ_q (−1)^q δ^q");
        }
        Payload::Colength(c) => {
            let spec = c.build()?;
            report.exact("delta", &delta_from_colength(&spec), "δ = (1/deg μ) Σ_q (−1)^q colength_q");
        }
        Payload::Germs(g) => {
            let mut results = Vec::new();
            for germ in g.build()? {
                let sp = spectrum(&germ)?;
                let spec = MonodromySpec::from_spectrum(&sp);
                let mut r = Report::new();
                r.value("kind", json!(germ.kind()));
                r.exact_list("angles", &monodromy_angles(&sp), "θ = frac(−α) over the spectrum");
                r.exact_list("topAngles", &top_hodge_angles(&sp), "θ = frac(−α) for α ∈ (0, 1]");
                r.exact("delta0", &delta_q(&spec, 0)?, "δ^0 = Σ θ on the top Hodge piece");
                results.push(r.to_json());
            }
            report.value("results", Value::Array(results));
        }
        other => return Err(CliError::input(format!("exponents needs monodromy, colength or germs, found {}", other.name()))),
    }
    Ok(Done::ok(report))
}

fn load_csv(path: &Path) -> CliResult<Vec<Sample>> {
    let f = File::open(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    read_samples(f)
}

fn fit_cmd(path: &Path, with_c: bool, opts: &GlobalOpts) -> CliResult<Done> {
    let samples = load_csv(path)?;
    let tol = opts.tolerance.unwrap_or(DEFAULT_RHO_TOLERANCE);
    if !(tol > 0.0 && tol < 0.5) {
        return Err(CliError::input("--tolerance must lie in (0, 0.5) for fit"));
    }
    let f = fit_with(&samples, with_c, tol)?;
    const SRC: &str = "least squares on [−2L, −log 2L, 1, 1/L], L = log r^{−1}";
    let mut report = Report::new();
    report
        .float("kappa", f.model.kappa, SRC)
        .number("rho", f.rho_rounded, "ϱ rounded to the nearest integer")
        .float("rhoRaw", f.rho_raw, SRC)
        .value("rhoIntegral", json!(f.rho_integral))
        .float("gamma", f.model.gamma, SRC)
        .float("c", f.model.c, SRC)
        .float("residualRms", f.residual_rms, "root mean square residual")
        .float("conditioning", f.conditioning, "squared singular value ratio of the scaled design")
        .number("samples", samples.len(), "input");
    if !f.rho_integral {
        report.warn(format!("ϱ = {} is not within {tol} of an integer", f.rho_raw));
    }
    Ok(Done::ok(report))
}

fn bt_fit_cmd(path: &Path, degree: usize, opts: &GlobalOpts) -> CliResult<Done> {
    let samples = load_csv(path)?;
    let tol = opts.tolerance.unwrap_or(1e-6);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::input("--tolerance must lie in (0, 1) for bt-fit"));
    }
    let f = bt_det_fit(&samples, degree)?;
    let mut report = Report::new();
    report
        .float_list("coeffs", &f.coeffs, "least squares in powers of ℓ = log|t|^{−2}")
        .float("residualRms", f.residual_rms, "root mean square residual")
        .float("conditioning", f.conditioning, "squared singular value ratio of the scaled design");
    match bt_rho(&f.coeffs, tol) {
        Some(rho) => {
            report.number("rho", rho, "largest m with |a_m| above the relative tolerance");
        }
        None => {
            report.value("rho", Value::Null).warn("every fitted coefficient vanishes");
        }
    }
    Ok(Done::ok(report))
}

fn curvature_cmd(path: &Path) -> CliResult<Done> {
    let payload = match ProblemFile::load(path)? {
        Payload::Curvature(c) => c,
        other => return Err(CliError::input(format!("expected a curvature payload, found {}", other.name()))),
    };
    if payload.terms.is_empty() {
        return Err(CliError::input("no terms"));
    }
    let terms: Vec<GTerm> = payload
        .terms
        .iter()
        .map(|t| {
            let phi = t.phi.clone();
            GTerm::new(t.ell, move |z: Complex64| {
                let s = z.norm_sqr();
                phi.iter().rev().fold(0.0, |acc, c| acc * s + c)
            })
        })
        .collect();
    let rep = curvature_check(&terms, &payload.grid.points()?)?;
    let points: Vec<Value> = rep
        .points
        .iter()
        .map(|p| {
            json!({
                "curvature": decimal(p.curvature),
                "leading": decimal(p.leading),
                "modulus": decimal(p.t.0.hypot(p.t.1)),
                "poincare": decimal(p.poincare),
                "scaledRemainder": decimal(p.scaled_remainder),
            })
        })
        .collect();
    let mut report = Report::new();
    report
        .number("ell", rep.ell, "max ℓ with φ_ℓ(0) ≠ 0")
        .float("maxScaledRemainder", rep.max_scaled_remainder, "|∂∂̄ log g − leading| |t|² (log|t|^{−1})³")
        .float("maxPoincare", rep.max_poincare, "|∂∂̄ log g| |t|² (log|t|^{−1})²")
        .value("points", Value::Array(points))
        .source("points", "Richardson-extrapolated five-point Laplacian of log g over 4");
    if let Some(bound) = payload.bound {
        report.float("bound", bound, "input");
        if rep.max_scaled_remainder > bound {
            report.warn("scaled remainder exceeds the bound");
            return Ok(Done::invariant(report));
        }
    }
    Ok(Done::ok(report))
}

pub const ETA_TOLERANCE: f64 = 1e-10;
pub const ELLIPTIC_KAPPA: f64 = -1.0 / 12.0;
pub const ELLIPTIC_KAPPA_TOLERANCE: f64 = 2e-3;

/// Largest relative defect of `η(τ+1) = e^{πi/12} η(τ)`, `η(−1/τ) = √(−iτ) η(τ)`
/// and of the unit-area determinant under both generators.
pub fn eta_identity_defect() -> CliResult<f64> {
    let taus = [
        Complex64::new(0.1, 0.9),
        Complex64::new(-0.3, 1.2),
        Complex64::new(0.25, 0.5),
        Complex64::new(0.45, 2.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-0.5, 0.866),
    ];
    let twelfth = Complex64::from_polar(1.0, std::f64::consts::PI / 12.0);
    let mut worst = 0f64;
    for &tau in &taus {
        let e = eta_auto(tau)?;
        let shifted = eta_auto(tau + 1.0)?;
        worst = worst.max((shifted - twelfth * e).norm() / e.norm());
        let inverted = eta_auto(-tau.inv())?;
        let expected = (Complex64::new(0.0, -1.0) * tau).sqrt() * e;
        worst = worst.max((inverted - expected).norm() / expected.norm());
        let d = torus_log_det_unit_area(tau)?;
        worst = worst.max((torus_log_det_unit_area(tau + 1.0)? - d).abs());
        worst = worst.max((torus_log_det_unit_area(-tau.inv())? - d).abs());
    }
    Ok(worst)
}

fn elliptic_cmd(lo: f64, hi: f64, count: usize, csv: Option<&Path>) -> CliResult<Done> {
    if !(lo > 1.0 && hi > lo && hi.is_finite()) || count < 4 {
        return Err(CliError::input("need 1 < im-tau-min < im-tau-max and count ≥ 4"));
    }
    let defect = eta_identity_defect()?;
    let samples = sample_family(&FamilyKind::NodeTate, &node_tate_grid(lo, hi, count))?;
    if let Some(path) = csv {
        let f = File::create(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        write_samples(f, &samples)?;
    }
    let f = fit_with(&samples, false, DEFAULT_RHO_TOLERANCE)?;
    let kappa_ok = (f.model.kappa - ELLIPTIC_KAPPA).abs() <= ELLIPTIC_KAPPA_TOLERANCE;
    let rho_ok = f.rho_rounded == 2;
    let eta_ok = defect <= ETA_TOLERANCE;

    const SRC: &str = "fit of −log det′Δ over τ = i log(1/r)/2π";
    let mut report = Report::new();
    report
        .float("kappa", f.model.kappa, SRC)
        .number("rho", f.rho_rounded, "ϱ rounded to the nearest integer")
        .float("rhoRaw", f.rho_raw, SRC)
        .float("gamma", f.model.gamma, SRC)
        .float("residualRms", f.residual_rms, "root mean square residual")
        .float("etaDefect", defect, "η modular transformations and unit-area determinant invariance")
        .exact("kappaExpected", &rat(-1, 12), "flat metric |dz|², (Im τ)² |η|⁴ determinant")
        .number("samples", samples.len(), "input")
        .value("checks", json!({"eta": eta_ok, "kappa": kappa_ok, "rho": rho_ok}));
    Ok(if eta_ok && kappa_ok && rho_ok { Done::ok(report) } else { Done::invariant(report) })
}
