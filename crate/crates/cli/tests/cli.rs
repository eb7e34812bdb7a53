use std::path::Path;
use std::process::{Command, Output};

use fockdirac::{ExampleReport, ExpectationEngine, SpacetimePoint, StateFamily, VerificationReport};
use fockdirac_cli::RunConfig;

fn fockdirac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockdirac")).args(args).output().unwrap()
}

fn write_config(dir: &Path, json: &str) -> String {
    let p = dir.join("run.json");
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_owned()
}

/// Cheap quadrature for plumbing tests; tolerance loosened to match.
const LIGHT: &str = r#""quadrature": {"radial_nodes": 12, "radial_panels": 4, "r_max": 12.0, "polar_nodes": 24, "azimuthal_nodes": 8, "abs_tol": 1e-2}"#;

fn parse_csv(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn verify_json_is_byte_identical_for_a_fixed_seed() {
    let a = fockdirac(&["verify", "--json", "--seed", "7"]);
    let b = fockdirac(&["verify", "--json", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn default_verify_reports_only_the_equal_point_anticommutator() {
    let out = fockdirac(&["verify", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.checks.len() >= 25);
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["field_anticommutator_equal_point"]);
    let raw: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["name", "paper_tag", "residual", "tolerance", "pass"] {
        assert!(raw["checks"][0].get(key).is_some(), "{key}");
    }
}

#[test]
fn seed_changes_samples_but_not_verdicts() {
    let a: VerificationReport = serde_json::from_slice(&fockdirac(&["verify", "--json", "--seed", "1"]).stdout).unwrap();
    let b: VerificationReport = serde_json::from_slice(&fockdirac(&["verify", "--json", "--seed", "2"]).stdout).unwrap();
    let verdicts = |r: &VerificationReport| r.checks.iter().map(|c| (c.name.clone(), c.pass)).collect::<Vec<_>>();
    assert_eq!(verdicts(&a), verdicts(&b));
    assert_ne!(
        a.check("spinor_mass_shell").unwrap().residual,
        b.check("spinor_mass_shell").unwrap().residual
    );
}

#[test]
fn perturbed_gamma_is_flagged() {
    let out = fockdirac(&["verify", "--json", "--perturb", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    let report: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.check("clifford_algebra").unwrap().pass);
    assert_eq!(report.perturbation, Some(1e-6));
}

#[test]
fn report_file_matches_stdout_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fockdirac(&["verify", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(fockdirac(&["verify", "--config", "/nonexistent/run.json"]).status.code(), Some(2));
    let bad = write_config(dir.path(), "{\"constants\": {\"kappa\": ");
    assert_eq!(fockdirac(&["example", "--config", &bad]).status.code(), Some(2));
    let unknown = write_config(dir.path(), r#"{"kapa": 1.0}"#);
    assert_eq!(fockdirac(&["example", "--config", &unknown]).status.code(), Some(2));
    assert_eq!(fockdirac(&["example", "--a", "0"]).status.code(), Some(2));
    assert_eq!(fockdirac(&["example", "--nodes", "0"]).status.code(), Some(2));
    assert_eq!(fockdirac(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn example_reports_closed_form_charge() {
    let out = fockdirac(&["example", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: ExampleReport = serde_json::from_slice(&out.stdout).unwrap();
    let expected = std::f64::consts::PI.powi(3) / 3.0;
    assert!(((r.charge - expected) / expected).abs() <= 1e-8);
    assert!(r.charge_rel_error <= 1e-8);
    assert!(r.classical_energy < r.energy);
    let text = String::from_utf8(fockdirac(&["example"]).stdout).unwrap();
    assert!(text.contains("I_Q") && text.contains("E_cl < E: true"));
}

#[test]
fn example_ratio_tends_to_one_for_large_kappa_a() {
    let r: ExampleReport = serde_json::from_slice(&fockdirac(&["example", "--json", "--kappa", "100"]).stdout).unwrap();
    assert!((r.ratio - 1.0).abs() < 2e-4, "{}", r.ratio);
    assert!(r.ratio > 1.0);
}

#[test]
fn truncated_cutoff_is_a_numerical_failure() {
    let out = fockdirac(&["example", "--rmax", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unstable"));
}

#[test]
fn ten_by_ten_grid_gives_header_and_hundred_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!("{{{LIGHT}}}"));
    let csv_path = dir.path().join("field.csv");
    let out = fockdirac(&["sample-field", "--config", &cfg, "--out", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 101);
    assert_eq!(text.lines().next().unwrap().split(',').count(), 16);
    assert!(parse_csv(&text).iter().all(|row| row.len() == 16));
}

#[test]
fn zero_occupation_gives_zero_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{{LIGHT}, "state": {{"mode": 1, "profile": {{"kind": "tabulated", "k": [0.0, 1.0], "rho": [0.0, 0.0]}}}},
               "grid": {{"x1": {{"min": -1, "max": 1, "n": 3}}, "x2": {{"min": 0, "max": 0, "n": 1}}}}}}"#
        ),
    );
    let out = fockdirac(&["sample-field", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = parse_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert!(row[4..12].iter().all(|v| *v == 0.0), "{row:?}");
    }
}

#[test]
fn origin_row_matches_direct_classical_spinor() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_text = r#"{"grid": {"x0": {"min": 0, "max": 0, "n": 1}, "x1": {"min": 0, "max": 0.5, "n": 2},
                        "x2": {"min": 0, "max": 0, "n": 1}, "x3": {"min": 0, "max": 0, "n": 1}}}"#;
    let cfg_path = write_config(dir.path(), cfg_text);
    let out = fockdirac(&["sample-field", "--config", &cfg_path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = parse_csv(std::str::from_utf8(&out.stdout).unwrap());
    let origin = &rows[0];
    assert!(origin[..4].iter().all(|v| *v == 0.0));

    let cfg: RunConfig = serde_json::from_str(cfg_text).unwrap();
    let engine = ExpectationEngine::new(cfg.constants, cfg.quadrature).unwrap();
    let phi = engine
        .classical_spinor(&StateFamily::Rho(cfg.state()), &SpacetimePoint::new(0.0, [0.0; 3]))
        .unwrap();
    for (r, z) in phi.iter().enumerate() {
        assert_eq!(origin[4 + 2 * r], z.re);
        assert_eq!(origin[5 + 2 * r], z.im);
    }
}
