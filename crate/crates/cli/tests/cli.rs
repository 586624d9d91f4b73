use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;
use torsion_cli::corpus::Corpus;
use torsion_cli::run;

fn cli(args: &[&str]) -> (u8, Value) {
    let mut argv = vec!["torsion"];
    argv.extend_from_slice(args);
    let out = run(argv);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or(Value::Null))
}

fn problem(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_torsion"))
}

#[test]
fn node_kappa() {
    let dir = TempDir::new().unwrap();
    let p = problem(&dir, "node.json", r#"{"schemaVersion":1,"germs":{"n":1,"rank":1,"list":[{"type":"brieskornPham","exponents":[2,2]}]}}"#);
    let (code, json) = cli(&["kappa-ihs", &p]);
    assert_eq!(code, 0);
    assert_eq!(json["kappa"], "-1/6");
    assert!(json["sources"]["kappa"].is_string());
}

#[test]
fn alt_convention_spectral_genus() {
    let dir = TempDir::new().unwrap();
    let p = problem(&dir, "cusp.json", r#"{"schemaVersion":1,"germs":{"list":[{"type":"brieskornPham","exponents":[2,3]}]}}"#);
    let (_, st) = cli(&["spectral-genus", &p]);
    let (_, alt) = cli(&["--convention", "alt", "spectral-genus", &p]);
    assert_eq!(st["results"][0]["pg"], "1/6");
    assert_eq!(alt["results"][0]["pg"], "5/6");
}

#[test]
fn exit_codes() {
    assert_eq!(run(["torsion", "no-such-command"]).code, 2);
    assert_eq!(run(["torsion"]).code, 2);
    assert_eq!(run(["torsion", "--help"]).code, 0);
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("absent.json").display().to_string();
    assert_eq!(cli(&["milnor", &missing]).0, 2);
    let bad = problem(&dir, "bad.json", r#"{"schemaVersion":2,"germs":{"list":[]}}"#);
    assert_eq!(cli(&["milnor", &bad]).0, 2);
    let two = problem(&dir, "two.json", r#"{"schemaVersion":1,"germs":{"list":[]},"semistable":{"alphaF":"1","beta":"0","degMu":1}}"#);
    assert_eq!(cli(&["milnor", &two]).0, 2);
    let wrong = problem(&dir, "wrong.json", r#"{"schemaVersion":1,"semistable":{"alphaF":"1","beta":"0","degMu":1}}"#);
    assert_eq!(cli(&["milnor", &wrong]).0, 2);
    let nonisolated = problem(&dir, "ni.json", r#"{"schemaVersion":1,"germs":{"list":[{"type":"explicit","nvars":2,"polynomial":"x^2","degreeBound":4}]}}"#);
    assert_eq!(cli(&["milnor", &nonisolated]).0, 2);
}

#[test]
fn binary_exit_status_matches_library() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("corpus-check").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn milnor_routes_and_spectrum() {
    let dir = TempDir::new().unwrap();
    let p = problem(
        &dir,
        "germs.json",
        r#"{"schemaVersion":1,"germs":{"list":[
            {"type":"brieskornPham","exponents":[3,4]},
            {"type":"quasiHomogeneous","weights":["1/3","1/3"],"polynomial":"x^2*y + y^3 + x^3"},
            {"type":"newton","vertices":[[5,0],[2,2],[0,5]]},
            {"type":"explicit","nvars":2,"polynomial":"x^5 + x^2*y^2 + y^5","degreeBound":12}]}}"#,
    );
    let (code, json) = cli(&["milnor", &p]);
    assert_eq!(code, 0, "{json}");
    let mus: Vec<u64> = json["results"].as_array().unwrap().iter().map(|r| r["milnor"].as_u64().unwrap()).collect();
    assert_eq!(mus, vec![6, 4, 11, 11]);
    assert_eq!(json["results"][0]["routes"].as_object().unwrap().len(), 3);

    let qh = problem(&dir, "qh.json", r#"{"schemaVersion":1,"germs":{"list":[{"type":"quasiHomogeneous","weights":["1/3","1/3"],"polynomial":"x^3 + y^3"}]}}"#);
    let (code, json) = cli(&["spectrum", &qh]);
    assert_eq!(code, 0);
    assert_eq!(json["results"][0]["spectrum"], serde_json::json!(["2/3", "1", "1", "4/3"]));
    assert_eq!(json["results"][0]["symmetric"], true);
    // Newton diagrams carry no spectrum
    let nw = problem(&dir, "nw.json", r#"{"schemaVersion":1,"germs":{"list":[{"type":"newton","vertices":[[3,0],[0,3]]}]}}"#);
    assert_eq!(cli(&["spectrum", &nw]).0, 2);
}

#[test]
fn quadratic_general_surface() {
    let dir = TempDir::new().unwrap();
    // P² with trivial normal bundle, ξ = O, H = O(1)
    let p = problem(
        &dir,
        "p2.json",
        r#"{"schemaVersion":1,"quadratic":{"kind":"general","dim":2,
            "generators":[{"name":"h","degree":1}],
            "tangent":{"rank":2,"chern":["3*h","3*h^2"]},
            "normal":{"rank":2,"chern":["0","0"]},
            "xi":{"rank":1,"chern":["0"]},
            "hyperplane":{"rank":1,"chern":["h"]},
            "intersection":{"h^2":"1"},
            "m":0}}"#,
    );
    let (code, json) = cli(&["kappa-quadratic", &p]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["kappa"], json["alpha"]);
    assert_eq!(json["kappaPolynomial"].as_array().unwrap().len(), 3);
    assert_eq!(cli(&["--order", "1", "kappa-quadratic", &p]).0, 2);
    assert_eq!(cli(&["--order", "2", "kappa-quadratic", &p]).0, 0);
}

#[test]
fn quadratic_curve_elliptic_zero() {
    let dir = TempDir::new().unwrap();
    let p = problem(&dir, "e.json", r#"{"schemaVersion":1,"quadratic":{"kind":"curve","genus":1,"degXi":0,"rank":1,"degH":1,"m":0}}"#);
    let (code, json) = cli(&["kappa-quadratic", &p]);
    assert_eq!(code, 0);
    assert_eq!(json["kappa"], "0");
    assert_eq!(json["closedForm"], "0");
}

#[test]
fn semistable_and_exponents() {
    let dir = TempDir::new().unwrap();
    let s = problem(&dir, "s.json", r#"{"schemaVersion":1,"semistable":{"alphaF":"-1/2","beta":"1/3","degMu":2,"alpha":"-1/6"}}"#);
    let (code, json) = cli(&["kappa-semistable", &s]);
    assert_eq!(code, 0);
    assert_eq!(json["kappa"], "-1/12");
    assert_eq!(json["delta"], "1/12");

    let m = problem(&dir, "m.json", r#"{"schemaVersion":1,"monodromy":{"n":1,"perDegree":{"0":["1/6","1/2"],"1":["1/3"]}}}"#);
    let (code, json) = cli(&["exponents", &m]);
    assert_eq!(code, 0);
    assert_eq!(json["deltaQ"]["0"], "2/3");
    assert_eq!(json["epsilon"], "1/3");
    let bad = problem(&dir, "bad.json", r#"{"schemaVersion":1,"monodromy":{"n":1,"perDegree":{"0":["3/2"]}}}"#);
    assert_eq!(cli(&["exponents", &bad]).0, 2);

    let c = problem(&dir, "c.json", r#"{"schemaVersion":1,"colength":{"degMu":3,"perDegree":{"0":5,"1":2}}}"#);
    assert_eq!(cli(&["exponents", &c]).1["delta"], "1");

    let g = problem(&dir, "g.json", r#"{"schemaVersion":1,"germs":{"list":[{"type":"brieskornPham","exponents":[2,3]}]}}"#);
    let (_, json) = cli(&["exponents", &g]);
    assert_eq!(json["results"][0]["topAngles"], serde_json::json!(["1/6"]));
}

#[test]
fn fit_and_bt_fit_from_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("ell.csv").display().to_string();
    assert_eq!(cli(&["elliptic-verify", "--csv", &csv]).0, 0);
    let (code, json) = cli(&["fit", &csv]);
    assert_eq!(code, 0);
    assert!((json["kappa"].as_f64().unwrap() + 1.0 / 12.0).abs() < 1e-3);
    assert_eq!(json["rho"], 2);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("r,value\n") && text.ends_with('\n'));

    // det = 1 + 2ℓ + 3ℓ² in ℓ = 2 log(1/r)
    let mut rows = String::from("r,value\n");
    for k in 0..40 {
        let l = 0.2 * 1.2f64.powi(k);
        let ell = 2.0 * l;
        rows.push_str(&format!("{:e},{}\n", (-l).exp(), 1.0 + 2.0 * ell + 3.0 * ell * ell));
    }
    let bt = problem(&dir, "bt.csv", &rows);
    let (code, json) = cli(&["bt-fit", &bt, "--degree", "4"]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["rho"], 2);
    assert!((json["coeffs"][2].as_f64().unwrap() - 3.0).abs() < 1e-6);

    let short = problem(&dir, "short.csv", "r,value\n0.1,1\n0.05,2\n0.02,3\n");
    assert_eq!(cli(&["fit", &short]).0, 2);
    let header = problem(&dir, "header.csv", "radius,value\n0.1,1\n");
    assert_eq!(cli(&["fit", &header]).0, 2);
}

#[test]
fn curvature_check_bound() {
    let dir = TempDir::new().unwrap();
    let body = |bound: f64| {
        format!(
            r#"{{"schemaVersion":1,"curvature":{{"terms":[{{"ell":2,"phi":[1.0]}},{{"ell":1,"phi":[1.0,1.0]}}],
                "grid":{{"from":1e-4,"to":0.1,"count":30}},"bound":{bound}}}}}"#
        )
    };
    let ok = problem(&dir, "ok.json", &body(1.0));
    let (code, json) = cli(&["curvature-check", &ok]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["ell"], 2);
    let tight = problem(&dir, "tight.json", &body(1e-3));
    assert_eq!(cli(&["curvature-check", &tight]).0, 3);
}

#[test]
fn elliptic_verify_rejects_bad_range() {
    assert_eq!(cli(&["elliptic-verify", "--im-tau-min", "0.5"]).0, 2);
}

fn write_corpus(dir: &Path, c: &Corpus) -> PathBuf {
    let p = dir.join("corpus.json");
    std::fs::write(&p, serde_json::to_string_pretty(c).unwrap()).unwrap();
    p
}

#[test]
fn corpus_dir_override_and_fault_injection() {
    let dir = TempDir::new().unwrap();
    let mut c = Corpus::bundled();
    c.germs[2].milnor = 99;
    write_corpus(dir.path(), &c);
    let out = bin().arg("corpus-check").env("TORSION_CORPUS_DIR", dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["mismatches"], 1);
    assert_eq!(json["diffs"][0]["entry"], "germs[2]");
    assert_eq!(json["diffs"][0]["fields"].as_object().unwrap().len(), 1);

    let empty = TempDir::new().unwrap();
    write_corpus(empty.path(), &Corpus { schema_version: 1, germs: vec![], quadratic: vec![] });
    let out = bin().arg("corpus-check").env("TORSION_CORPUS_DIR", empty.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["warnings"][0].as_str().unwrap().contains("empty"));

    let nowhere = TempDir::new().unwrap();
    let out = bin().arg("corpus-check").env("TORSION_CORPUS_DIR", nowhere.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let a = run(["torsion", "elliptic-verify"]);
    let b = run(["torsion", "elliptic-verify"]);
    assert_eq!(a, b);
    let out = dir.path().join("report.json");
    let o = run(["torsion", "--output", out.to_str().unwrap(), "elliptic-verify"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), a.stdout);
}

#[test]
fn every_numeric_field_is_sourced() {
    fn check(v: &Value) {
        if let Value::Object(map) = v {
            let sources = map.get("sources").and_then(Value::as_object);
            for (k, x) in map {
                if k == "sources" {
                    continue;
                }
                let numeric = x.is_number()
                    || x.as_str().is_some_and(|s| s.parse::<f64>().is_ok() || s.contains('/') && !s.contains(' '));
                if numeric {
                    assert!(sources.is_some_and(|s| s.contains_key(k)), "unsourced field {k}");
                }
                check(x);
            }
        } else if let Value::Array(xs) = v {
            xs.iter().for_each(check);
        }
    }
    let dir = TempDir::new().unwrap();
    let p = problem(&dir, "g.json", r#"{"schemaVersion":1,"germs":{"list":[{"type":"brieskornPham","exponents":[2,5]}]}}"#);
    for cmd in ["kappa-ihs", "spectral-genus", "spectrum"] {
        check(&cli(&[cmd, &p]).1);
    }
    check(&cli(&["elliptic-verify"]).1);
    check(&cli(&["corpus-check"]).1);
}
