//! End-to-end runs of the command line through `darboux::run`.

use darboux::{run, Outcome};
use serde_json::Value;

fn darboux(args: &[&str]) -> Outcome {
    run(std::iter::once("darboux").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = darboux(args);
    let v = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}): {}\n{}", out.stdout, out.stderr));
    (out.code, v)
}

/// `(f, cofactor)` of every result row.
fn pairs(v: &Value) -> Vec<(String, String)> {
    v["results"]
        .as_array()
        .expect("results array")
        .iter()
        .map(|r| (r["f"].as_str().unwrap().to_string(), r["cofactor"].as_str().unwrap().to_string()))
        .collect()
}

fn generators(v: &Value) -> Vec<(String, String)> {
    v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["generator"] == Value::Bool(true))
        .map(|r| (r["f"].as_str().unwrap().to_string(), r["cofactor"].as_str().unwrap().to_string()))
        .collect()
}

fn owned(rows: &[(&str, &str)]) -> Vec<(String, String)> {
    rows.iter().map(|(f, k)| (f.to_string(), k.to_string())).collect()
}

#[test]
fn find_on_each_locus() {
    let cases = [
        (["--a", "1", "--b", "-2"], ("x^2 + z^2", "2")),
        (["--a", "5", "--b", "1"], ("y^2 + z^2", "2")),
        (["--a", "-3", "--b", "-3"], ("x^2 - y^2", "-6")),
    ];
    for (params, want) in cases {
        let mut args = vec!["find", "--degree", "6"];
        args.extend(params);
        let (code, v) = json(&args);
        assert_eq!(code, 0);
        assert_eq!(generators(&v), owned(&[want]), "{params:?}");
        assert!(v["results"].as_array().unwrap().iter().all(|r| r["verified"] == Value::Bool(true)));
    }
}

#[test]
fn find_off_the_loci_is_empty() {
    let (code, v) = json(&["find", "--a", "2/3", "--b", "-5/7"]);
    assert_eq!(code, 0);
    assert!(pairs(&v).is_empty());
    assert_eq!(v["config"]["degree"], 8);
    assert!(!v["evidence"]["candidate_cofactors"].as_array().unwrap().is_empty());
}

#[test]
fn find_positive_sign() {
    let (code, v) = json(&["find", "--field", "d2-pos", "--a", "1", "--b", "1/2", "--degree", "4"]);
    assert_eq!(code, 0);
    assert!(pairs(&v).contains(&("x^2 - z^2".to_string(), "2".to_string())));
}

#[test]
fn find_first_integral_at_origin_of_parameters() {
    let (code, v) = json(&["find", "--a", "0", "--b", "0", "--degree", "2"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    let fi: Vec<&Value> = rows.iter().filter(|r| r["first_integral"] == Value::Bool(true)).collect();
    assert_eq!(fi.len(), 1);
    assert_eq!(fi[0]["f"], "x^2 - y^2");
    assert_eq!(fi[0]["cofactor"], "0");
}

#[test]
fn text_output_is_a_table() {
    let out = darboux(&["find", "--a", "1", "--b=-2", "--degree", "2", "--format", "text"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("x^2 + z^2"));
    assert!(out.stdout.lines().any(|l| l.starts_with("f ") && l.contains("cofactor")));
}

#[test]
fn verify_exit_codes() {
    // Tied parameters: the condition holds identically.
    let out = darboux(&["verify", "--b", "a", "x^2 - y^2", "2*a"]);
    assert_eq!(out.code, 0, "{}", out.stderr);

    // Symbolic parameters: fails, and the residual points at a=b.
    let (code, v) = json(&["verify", "x^2 - y^2", "2*a"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["holds"], false);
    assert_eq!(v["results"]["residual_vanishes_on"], serde_json::json!(["a=b"]));
    let out = darboux(&["verify", "x^2 - y^2", "2*a"]);
    assert!(out.stderr.contains("a=b"), "{}", out.stderr);

    // A constant is always Darboux with cofactor 0.
    assert_eq!(darboux(&["verify", "1", "0"]).code, 0);

    // The positive-sign catalog entry at a point.
    assert_eq!(darboux(&["verify", "--field", "d2-pos", "--a", "1", "--b", "7", "x^2 - z^2", "2"]).code, 0);
}

#[test]
fn sweep_default_grid() {
    let (code, v) = json(&["sweep", "--degree", "4"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    let got: Vec<(String, String, String)> = rows
        .iter()
        .map(|r| {
            (
                r["condition"].as_str().unwrap().to_string(),
                r["f"].as_str().unwrap().to_string(),
                r["cofactor"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    let want = [("a=1", "x^2 + z^2", "2"), ("a=b", "x^2 - y^2", "2*a"), ("b=1", "y^2 + z^2", "2")];
    assert_eq!(got.len(), 3, "{got:?}");
    for w in want {
        assert!(got.contains(&(w.0.into(), w.1.into(), w.2.into())), "{got:?}");
    }
    assert!(rows.iter().all(|r| r["verified"] == Value::Bool(true)));
    let a_eq_b = rows.iter().find(|r| r["condition"] == "a=b").unwrap();
    assert_eq!(a_eq_b["first_integral_at"], serde_json::json!(["a=0, b=0"]));
}

#[test]
fn sweep_single_point_grid_still_probes_the_loci() {
    let (code, v) = json(&["sweep", "--degree", "2", "--grid", "0:0:1,0:0:1"]);
    assert_eq!(code, 0);
    assert_eq!(v["evidence"]["grid_points"], 7);
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
}

#[test]
fn sweep_rejects_parameter_values() {
    let out = darboux(&["sweep", "--a", "1"]);
    assert_eq!(out.code, 2);
}

#[test]
fn dynamics_negative_diagonal() {
    let (code, v) = json(&["dynamics", "--a", "-1", "--b", "-1", "--samples", "4"]);
    assert_eq!(code, 0);
    let fps = v["results"]["fixed_points"].as_array().unwrap();
    assert_eq!(fps.len(), 5);
    assert!(fps.iter().all(|p| p["stability"] == "saddle"));
    let exact: Vec<&str> = fps.iter().filter_map(|p| p["exact"].as_str()).collect();
    for want in ["(1, 1, 1)", "(1, -1, -1)", "(-1, 1, -1)", "(-1, -1, 1)", "(0, 0, 0)"] {
        assert!(exact.contains(&want), "{exact:?}");
    }
    let het = &v["results"]["heteroclinic"];
    assert_eq!(het["connections"], 4);
    assert_eq!(het["connected_equilibria"], 4);
    assert!(het["max_plane_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["evidence"]["invariant_planes"].as_array().unwrap().len(), 2);
}

#[test]
fn dynamics_repelling_origin() {
    let (code, v) = json(&["dynamics", "--a", "1", "--b", "3", "--samples", "8"]);
    assert_eq!(code, 0);
    let fps = v["results"]["fixed_points"].as_array().unwrap();
    assert_eq!(fps.len(), 1);
    assert_eq!(fps[0]["stability"], "source");
    assert_eq!(v["evidence"]["escape"]["count"], 8);
    assert!(v["results"]["heteroclinic"].is_null());
}

#[test]
fn dynamics_first_integral_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let p = path.to_str().unwrap();
    let (code, v) = json(&["dynamics", "--a", "0", "--b", "0", "--samples", "0", "--dump", p]);
    assert_eq!(code, 0);
    let drift = v["results"]["drift"].as_array().unwrap();
    let fi = drift.iter().find(|d| d["first_integral"] == Value::Bool(true)).expect("first integral row");
    assert_eq!(fi["f"], "x^2 - y^2");
    assert!(fi["max_drift"].as_f64().unwrap() < 1e-7);
    assert_eq!(v["results"]["fixed_points"].as_array().unwrap().len(), 0);
    assert_eq!(v["results"]["families"].as_array().unwrap().len(), 2);

    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,x,y,z"));
    assert_eq!(lines.count(), 5001);
    assert_eq!(v["evidence"]["dump"]["samples"], 5001);
}

#[test]
fn dynamics_needs_numbers() {
    let out = darboux(&["dynamics"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error:"), "{}", out.stderr);
}

#[test]
fn parse_canonicalizes() {
    let out = darboux(&["parse", "(x+y)*(x-y) + 0*z", "--format", "text"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "x^2 - y^2\n");
    let out = darboux(&["parse", "-y*y + x^2", "--format", "text"]);
    assert_eq!(out.stdout, "x^2 - y^2\n", "{}", out.stderr);
    let (_, v) = json(&["parse"]);
    assert_eq!(v["results"]["canonical"], "dx = y*z + a*x; dy = x*z + b*y; dz = -x*y + z");
    assert_eq!(v["evidence"]["parameters"], serde_json::json!(["a", "b"]));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["find", "--a", "0.5"][..],
        &["find", "--degree", "0"],
        &["find", "--field", "nope"],
        &["verify", "x^2 +", "0"],
        &["dynamics", "--a", "1", "--b", "1", "--step", "0"],
        &["frobnicate"],
    ] {
        let out = darboux(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn runs_are_deterministic() {
    for args in [
        &["sweep", "--degree", "4"][..],
        &["find", "--a", "1", "--b", "-2"],
        &["dynamics", "--a", "-1", "--b", "-1", "--samples", "16"],
    ] {
        assert_eq!(darboux(args), darboux(args), "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = darboux(&["find", "--a", "5", "--b", "1", "-o", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["config"]["command"], "find");
    assert!(v["version"].is_string());
}

#[test]
fn field_files() {
    let dir = tempfile::tempdir().unwrap();
    let lorenz = dir.path().join("lorenz.field");
    std::fs::write(
        &lorenz,
        "# Lorenz with beta = 2 sigma\ndx = 10*(y - x)\ndy = 28*x - y - x*z\ndz = x*y - 20*z\n",
    )
    .unwrap();
    let l = &format!("file:{}", lorenz.display());
    let (code, v) = json(&["find", "--field", l, "--degree", "2"]);
    assert_eq!(code, 0);
    assert!(pairs(&v).contains(&("x^2 - 20*z".to_string(), "-20".to_string())), "{:?}", pairs(&v));
    assert_eq!(darboux(&["verify", "--field", l, "x^2 - 20*z", "-20"]).code, 0);
    let out = darboux(&["find", "--field", l, "--check-equivariance", "--degree", "2"]);
    assert!(out.stderr.contains("equivariant"), "{}", out.stderr);

    // Parameters from the file, overridden on the command line.
    let d2 = dir.path().join("d2.field");
    std::fs::write(&d2, "param a = 1\nparam b = -2\ndx = a*x + y*z\ndy = b*y + x*z\ndz = z - x*y\n").unwrap();
    let p = &format!("file:{}", d2.display());
    let (_, v) = json(&["find", "--field", p, "--degree", "2"]);
    assert_eq!(pairs(&v), owned(&[("x^2 + z^2", "2")]));
    let (_, v) = json(&["find", "--field", p, "--degree", "2", "--a", "5", "--b", "1"]);
    assert_eq!(pairs(&v), owned(&[("y^2 + z^2", "2")]));

    let missing = dir.path().join("missing.field");
    assert_eq!(darboux(&["find", "--field", &format!("file:{}", missing.display())]).code, 2);
}
