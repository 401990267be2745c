use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_specfact"))
}

fn write(dir: &Path, name: &str, json: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = bin().args(args).env_remove("SPECFACT_SEED").output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, out)
}

const BOUNDARY: &str = r#"{"kind":"trig","coeffs":[{"k":[-1],"re":1.0,"im":0.0},{"k":[0],"re":2.0,"im":0.0},{"k":[1],"re":1.0,"im":0.0}]}"#;
const HALF: &str = r#"{"kind":"trig","coeffs":[{"k":[-1],"re":0.5,"im":0.0},{"k":[0],"re":1.25,"im":0.0},{"k":[1],"re":0.5,"im":0.0}]}"#;
const INDEFINITE: &str = r#"{"kind":"trig","coeffs":[{"k":[-1],"re":1.0,"im":0.0},{"k":[0],"re":0.5,"im":0.0},{"k":[1],"re":1.0,"im":0.0}]}"#;

fn coeffs(report: &Value) -> Vec<(i64, f64, f64)> {
    report["factor"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["k"][0].as_i64().unwrap(), c["re"].as_f64().unwrap(), c["im"].as_f64().unwrap()))
        .collect()
}

#[test]
fn factor_roots_on_boundary_fixture() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", BOUNDARY);
    let (code, report, _) = run(&["factor", "--method", "roots", "--in", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    let h = coeffs(&report);
    assert_eq!(h.len(), 2);
    for ((k, re, im), want) in h.iter().zip([(0, 1.0), (1, 1.0)]) {
        assert_eq!(*k, want.0);
        assert!((re - want.1).abs() < 1e-10 && im.abs() < 1e-10);
    }
    assert_eq!(report["flags"]["boundary_pairs"], 1);
    assert_eq!(report["config"]["tolerances"]["boundary"], 1e-6);
}

#[test]
fn levinson_rejects_indefinite_weight() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", INDEFINITE);
    let (code, report, _) = run(&["factor", "--method", "levinson", "--in", w.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report["error"]["name"], "NotNonnegative");
}

#[test]
fn compare_three_methods() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", HALF);
    let (code, report, _) = run(&["compare", "--methods", "roots,cepstral,levinson", "--in", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    let deltas = report["diagnostics"]["deltas"].as_object().unwrap();
    assert_eq!(deltas.len(), 3);
    assert!(deltas.values().all(|d| d.as_f64().unwrap() < 1e-5));
    assert_eq!(report["flags"]["agree"], true);
    assert_eq!(report["config"]["order"], Value::Null);
}

#[test]
fn levinson_order_defaults_and_overrides() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", HALF);
    let (_, report, _) = run(&["factor", "--method", "levinson", "--in", w.to_str().unwrap()]);
    assert_eq!(report["diagnostics"]["section_order"], 64);
    let (code, report, _) = run(&["factor", "--method", "levinson", "--order", "3", "--in", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["diagnostics"]["section_order"], 3);
    // |1 + a e^{ix}|²: eps_n = (1 − a^{2n+4}) / (1 − a^{2n+2})
    let a2: f64 = 0.25;
    let want = (1.0 - a2.powi(5)) / (1.0 - a2.powi(4));
    let eps = report["mahler"].as_f64().unwrap();
    assert!((eps - want).abs() < 1e-12, "{eps} vs {want}");
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", HALF);
    let args = ["factor", "--method", "cepstral", "--ladder", "1000,64", "--grid", "512", "--in", w.to_str().unwrap()];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn report_and_csv_files() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", BOUNDARY);
    let out = dir.path().join("r.json");
    let csv = dir.path().join("s.csv");
    let status = bin()
        .args(["factor", "--method", "roots", "--samples", "8", "--in"])
        .arg(&w)
        .arg("--out")
        .arg(&out)
        .arg("--csv")
        .arg(&csv)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["command"], "factor");
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,w,h2"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 8);
    // x = π, where w vanishes
    assert!(rows[4][1].abs() <= 1e-12 && rows[4][2].abs() <= 1e-12);
}

#[test]
fn lift_output_parses_back() {
    let dir = TempDir::new().unwrap();
    let p = write(
        dir.path(),
        "p.json",
        r#"{"kind":"bivar","coeffs":[{"k":[1,0],"re":1.0,"im":0.0},{"k":[0,1],"re":1.0,"im":0.0}]}"#,
    );
    let (code, report, _) = run(&["lift", "--alpha", "1.4142135623730951", "--in", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let ap = serde_json::to_string(&report["factor"]).unwrap();
    let parsed = specfact::io::parse_coeffs(&ap).unwrap();
    let want = specfact::ApFunc::from_pairs([(1.0, 1.0), (std::f64::consts::SQRT_2, 1.0)]);
    assert_eq!(parsed, specfact::io::Coeffs::Ap(want));
    assert_eq!(report["order"]["alpha"], std::f64::consts::SQRT_2);
}

#[test]
fn alpha_required_iff_bivar() {
    let dir = TempDir::new().unwrap();
    let b = write(dir.path(), "b.json", r#"{"kind":"bivar","coeffs":[{"k":[0,0],"re":1.0,"im":0.0}]}"#);
    let (code, report, _) = run(&["factor", "--method", "cepstral", "--in", b.to_str().unwrap()]);
    assert_eq!((code, report["error"]["name"].as_str()), (2, Some("InvalidArgument")));
    let w = write(dir.path(), "w.json", HALF);
    let (code, _, _) = run(&["factor", "--alpha", "1.5", "--in", w.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn bivar_factor_reports_containment() {
    let dir = TempDir::new().unwrap();
    // |1 + 0.5 e^{ix} + 0.25 e^{iy}|²
    let g = specfact::BivarPoly::from_pairs([((0, 0), 1.0), ((1, 0), 0.5), ((0, 1), 0.25)]);
    let w = specfact::io::emit_coeffs(&specfact::io::Coeffs::Bivar(g.squared_modulus()));
    let w = write(dir.path(), "w.json", &w);
    let args = |grid: &'static str| ["factor", "--method", "cepstral", "--grid", grid, "--alpha", "1.4142135623730951", "--in", w.to_str().unwrap()].map(String::from);
    let (code, report, _) = run(&args("256").each_ref().map(String::as_str));
    assert_eq!(code, 0);
    assert_eq!(report["flags"]["contained"], true);
    assert!(report["diagnostics"]["containment"]["margin"].as_f64().unwrap() >= -1e-8);
    // on 64 points the ordered projection aliases modes of small θ̂ into the factor
    let (code, coarse, _) = run(&args("64").each_ref().map(String::as_str));
    assert_eq!(code, 0);
    assert_eq!(coarse["flags"]["contained"], false);
    assert_eq!(report["flags"]["certified"], true);
    assert!((report["diagnostics"]["containment"]["tau"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-15);
}

#[test]
fn invalid_arguments_exit_two() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", HALF);
    let path = w.to_str().unwrap();
    assert_eq!(run(&["factor", "--grid", "1000", "--method", "cepstral", "--in", path]).0, 2);
    assert_eq!(run(&["factor", "--tol", "bogus=1", "--in", path]).0, 2);
    assert_eq!(run(&["factor", "--tol", "boundary=-1", "--in", path]).0, 2);
    assert_eq!(run(&["factor", "--in", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["factor", "--method", "levinson", "--order", "0", "--in", path]).0, 2);
    let bad = write(dir.path(), "bad.json", r#"{"kind":"trig","coeffs":[{"k":[0,1],"re":1,"im":0}]}"#);
    assert_eq!(run(&["factor", "--in", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn numerical_failure_exits_three() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", BOUNDARY);
    // the zero of w at π has no regularization: log w is unbounded on the grid
    let (code, report, _) = run(&["factor", "--method", "cepstral", "--grid", "64", "--in", w.to_str().unwrap()]);
    assert_eq!(code, 3, "{report}");
    assert!(report["error"]["name"].is_string());
}

#[test]
fn tolerance_overrides_are_echoed() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", HALF);
    let (code, report, _) = run(&["factor", "--tol", "boundary=1e-7", "--in", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["config"]["tolerances"]["boundary"], 1e-7);
    assert_eq!(report["config"]["tolerances"]["nonneg"], 1e-9);
}

#[test]
fn mahler_and_verify_outer() {
    let dir = TempDir::new().unwrap();
    let inner = write(dir.path(), "h.json", r#"{"kind":"trig","coeffs":[{"k":[0],"re":1.0,"im":0.0},{"k":[1],"re":2.0,"im":0.0}]}"#);
    let (code, report, _) = run(&["mahler", "--in", inner.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((report["mahler"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(report["flags"]["outer"], false);
    let (code, report, _) = run(&["verify", "outer", "--in", inner.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["flags"]["outer"], false);
    assert_eq!(report["flags"]["criteria_agree"], true);

    let ap = write(dir.path(), "a.json", r#"{"kind":"ap","coeffs":[{"omega":0.0,"re":1.0,"im":0.0},{"omega":1.4142135623730951,"re":0.5,"im":0.0}]}"#);
    let (code, report, _) = run(&["verify", "outer", "--in", ap.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["flags"]["outer"], true);
}

#[test]
fn ahiezer_with_box() {
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "h.json", r#"{"kind":"ap","coeffs":[{"omega":0.0,"re":1.0,"im":0.0},{"omega":1.0,"re":2.0,"im":0.0}]}"#);
    // zeros at ±π + i ln 2 sit on the vertical edges and count by principal value
    let (code, report, _) = run(&["ahiezer", "--in", h.to_str().unwrap(), "--box=-3.141592653589793,3.141592653589793,0.01,3"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["diagnostics"]["upper_zero_count"], 1);
    let (_, narrow, _) = run(&["ahiezer", "--in", h.to_str().unwrap(), "--box=-3.14159,3.14159,0.01,3"]);
    assert_eq!(narrow["diagnostics"]["upper_zero_count"], 0);
    let (_, wide, _) = run(&["ahiezer", "--in", h.to_str().unwrap(), "--box=-4,4,0.01,3"]);
    assert_eq!(wide["diagnostics"]["upper_zero_count"], 2);
    assert_eq!(report["diagnostics"]["tau"], 1.0);
    assert!(report["residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn verify_fixtures_uses_seed() {
    let go = |seed: &str| {
        bin()
            .args(["verify", "fixtures", "--count", "6", "--grid", "1024"])
            .env("SPECFACT_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b, c) = (go("17"), go("17"), go("18"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["diagnostics"]["seed"], 17);
    assert_eq!(go("x").status.code(), Some(2));
}
