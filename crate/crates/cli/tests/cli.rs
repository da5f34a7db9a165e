use std::path::Path;
use std::process::{Command, Output};

use phl::Report;

fn phl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phl")).args(args).output().expect("run phl")
}

fn json_report(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = phl(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, out.status.code().unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn inspect_cy2d_flags_cotton_york() {
    let (r, code) = json_report(&["inspect", "cy2d"]);
    assert_eq!(code, 0);
    let inv = r.invariants.unwrap();
    assert!(inv.weyl.unwrap().zero);
    let cy = inv.cotton_york.unwrap();
    assert!(!cy.zero);
    assert_eq!(cy.leading["0,1,0"], "2");
    assert_eq!(inv.ricci.leading["0,0"], "2*y");
}

#[test]
fn inspect_flat_is_all_zero() {
    let (r, code) = json_report(&["inspect", "flat:4"]);
    assert_eq!(code, 0);
    let inv = r.invariants.unwrap();
    assert!(inv.ricci.zero && inv.rho.unwrap().zero && inv.weyl.unwrap().zero && inv.cotton_york.unwrap().zero);
}

#[test]
fn inspect_non_einstein() {
    let (r, code) = json_report(&["inspect", "non-einstein:2"]);
    assert_eq!(code, 0);
    let inv = r.invariants.unwrap();
    assert_eq!(inv.rho_nondegenerate, Some(true));
    assert_eq!(inv.einstein, Some(false));
}

#[test]
fn cone_commands_confirm_ricci_flatness() {
    for args in [
        vec!["cone", "cy2d", "--kind", "real"],
        vec!["cone", "symplectic:4", "--kind", "symplectic", "--auto-data"],
        vec!["cone", "cquadric:2", "--kind", "complex"],
    ] {
        let (r, code) = json_report(&args);
        assert_eq!(code, 0, "{args:?}");
        let cone = r.cone.unwrap();
        assert!(cone.torsion_free && cone.ricci_flat, "{args:?}");
        assert!(cone.extra_checks.iter().all(|c| c.pass));
    }
}

#[test]
fn asymmetric_rho_manifest_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    // Γ^x_xy = Γ^x_yx = x: the trace form x dy is not closed
    let path = write(
        dir.path(),
        "skew.toml",
        "name = \"skew\"\ndim = 2\nvars = [\"x\", \"y\"]\nsymmetric = true\n[gamma]\n\"0,0,1\" = \"x\"\n",
    );
    let out = phl(&["cone", &path, "--kind", "real"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("volume form"), "{err}");
}

#[test]
fn holonomy_reproduces_the_three_full_algebras() {
    for (args, dim, label) in [
        (vec!["holonomy", "product:quadric:3,0,1,quadric:3,0,1"], 10, "so(5,0)"),
        (vec!["holonomy", "product:non-einstein:2,non-einstein:2"], 24, "sl(5,R)"),
        (vec!["holonomy", "symplectic:4", "--kind", "symplectic"], 21, "sp(6,R)"),
    ] {
        let (r, code) = json_report(&args);
        assert_eq!(code, 0, "{args:?}");
        let h = r.holonomy.unwrap();
        assert_eq!(h.dimension, dim);
        assert!(h.stabilized && h.closed);
        assert!(!h.generators.is_empty());
        assert_eq!(r.classification.unwrap().label, label);
    }
}

#[test]
fn max_depth_limits_the_search() {
    let (r, _) = json_report(&["holonomy", "product:quadric:3,0,1,quadric:3,0,1", "--max-depth", "0"]);
    let h = r.holonomy.unwrap();
    assert_eq!((h.depth, h.stabilized), (0, false));
    assert_eq!(h.history.len(), 1);
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let args = ["holonomy", "cy2d", "--json"];
    let a = phl(&args).stdout;
    let b = phl(&args).stdout;
    assert_eq!(a, b);
    let report: Report = serde_json::from_slice(&a).unwrap();
    let again = report.to_json();
    assert_eq!(serde_json::from_str::<Report>(&again).unwrap(), report);
    assert_eq!(again.trim_end(), String::from_utf8(a).unwrap().trim_end());
}

#[test]
fn out_file_matches_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = phl(&["inspect", "quadric:3,0,1", "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    let saved: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(saved.pass);
    assert_eq!(saved.input.unwrap().target, "quadric:3,0,1");
}

#[test]
fn manifest_errors_carry_locations() {
    let dir = tempfile::tempdir().unwrap();
    let bad_poly = write(dir.path(), "bad.toml", "name = \"bad\"\ndim = 2\nvars = [\"x\", \"y\"]\n[gamma]\n\"1,0,0\" = \"y^2 +* x\"\n");
    let err = String::from_utf8(phl(&["inspect", &bad_poly]).stderr).unwrap();
    assert!(err.contains("gamma[\"1,0,0\"]") && err.contains("byte 5"), "{err}");
    let bad_index = write(dir.path(), "idx.toml", "name = \"idx\"\ndim = 2\nvars = [\"x\", \"y\"]\n[gamma]\n\"2,0,0\" = \"x\"\n");
    let err = String::from_utf8(phl(&["inspect", &bad_index]).stderr).unwrap();
    assert!(err.contains("out of range"), "{err}");
    let unknown = write(dir.path(), "var.toml", "name = \"v\"\ndim = 2\nvars = [\"x\", \"y\"]\n[gamma]\n\"1,0,0\" = \"w\"\n");
    let err = String::from_utf8(phl(&["inspect", &unknown]).stderr).unwrap();
    assert!(err.contains('w'), "{err}");
}

#[test]
fn manifest_matches_catalog_cy2d() {
    let dir = tempfile::tempdir().unwrap();
    let toml = write(dir.path(), "cy.toml", "name = \"cy\"\ndim = 2\nvars = [\"x\", \"y\"]\n[gamma]\n\"1,0,0\" = \"y^2\"\n");
    let json = write(
        dir.path(),
        "cy.json",
        r#"{"name": "cy", "dim": 2, "vars": ["x", "y"], "gamma": {"1,0,0": "y^2"}}"#,
    );
    let (from_toml, _) = json_report(&["inspect", &toml]);
    let (from_json, _) = json_report(&["inspect", &json]);
    let (catalog, _) = json_report(&["inspect", "cy2d"]);
    assert_eq!(from_toml.invariants, catalog.invariants);
    assert_eq!(from_json.invariants, catalog.invariants);
}

#[test]
fn gaussian_manifest_builds_a_complex_cone() {
    let dir = tempfile::tempdir().unwrap();
    // Γ = Υ⊙δ with Υ = d(i·z²/2), a holomorphic projectively flat connection
    let path = write(
        dir.path(),
        "holo.toml",
        "name = \"holo\"\ndim = 2\nfield = \"gaussian\"\nvars = [\"z\", \"w\"]\nsymmetric = true\n[gamma]\n\"0,0,0\" = \"2*i*z\"\n\"1,0,1\" = \"i*z\"\n",
    );
    let (inspect, _) = json_report(&["inspect", &path]);
    assert!(inspect.invariants.unwrap().weyl.unwrap().zero);
    let (r, code) = json_report(&["cone", &path, "--kind", "complex"]);
    assert_eq!(code, 0);
    let cone = r.cone.unwrap();
    assert!(cone.ricci_flat && cone.torsion_free);
}

#[test]
fn demo_passes_and_names_corrupted_constants() {
    let (r, code) = json_report(&["demo", "--criterion", "2", "--criterion", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r.acceptance.len(), 2);
    assert!(r.acceptance.iter().all(|a| a.pass));

    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "bad.toml", "cy2d_ricci_coefficient = 3\n");
    let out = phl(&["demo", "--criterion", "2", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[FAIL] criterion 2") && text.contains("Ric = 3y dx⊗dx"), "{text}");
}

#[test]
fn unknown_targets_fail_cleanly() {
    let out = phl(&["inspect", "torus:2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown catalog target"));
    let out = phl(&["demo", "--criterion", "12"]);
    assert_eq!(out.status.code(), Some(2));
}
