use std::process::Command;

use geoent::cli::run;
use geoent::io::parse_state;
use geoent::{nearest_product_state, overlap_with_product, PureState, SolverConfig};
use serde_json::Value;

fn geoent(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("geoent").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn structured(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "structured"]);
    let (code, out, err) = geoent(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("geoent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn ghz_invariants() {
    let v = structured(&["invariants", "--builtin", "ghz"]);
    for key in ["b_A", "b_B", "b_C"] {
        assert!(v[key].as_f64().unwrap().abs() < 1e-12, "{key}");
    }
    assert!((v["tau"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["G"].as_array().unwrap().len(), 3);
    assert!((v["G"][2][2].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn w_invariants() {
    let v = structured(&["invariants", "--builtin", "w"]);
    for key in ["b_A", "b_B", "b_C"] {
        assert!(
            (v[key].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12,
            "{key}"
        );
    }
    assert!(v["tau"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["bloch_C"][2].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn human_invariants_round_to_ten_digits() {
    let (code, out, _) = geoent(&["invariants", "--builtin", "w"]);
    assert_eq!(code, 0);
    assert!(out.contains("b_A = 0.3333333333\n"), "{out}");
}

#[test]
fn malformed_file_names_the_field() {
    let path = temp_file(
        "short.json",
        r#"{"n_qubits": 3, "amplitudes": [[1, 0], [0, 0]]}"#,
    );
    let (code, _, err) = geoent(&["invariants", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("amplitudes"), "{err}");

    let path = temp_file("noqubits.json", r#"{"amplitudes": [[1, 0], [0, 0]]}"#);
    let (code, _, err) = geoent(&["overlap", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("n_qubits"), "{err}");
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(geoent(&["invariants", "--builtin", "dicke4"]).0, 2);
    assert_eq!(geoent(&["invariants", "--builtin", "nope"]).0, 2);
    assert_eq!(geoent(&["overlap"]).0, 2);
    assert_eq!(
        geoent(&["overlap", "--builtin", "ghz", "--input", "x.json"]).0,
        2
    );
    assert_eq!(geoent(&["demo", "unknown"]).0, 2);
    assert_eq!(
        geoent(&["overlap", "--builtin", "ghz", "--max-iters", "0"]).0,
        2
    );
    assert_eq!(
        geoent(&["invariants", "--input", "/definitely/not/here.json"]).0,
        2
    );
    let (code, out, _) = geoent(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-theorem"));
}

#[test]
fn unnormalized_input_needs_the_flag() {
    let path = temp_file(
        "loose.json",
        r#"{"n_qubits": 1, "amplitudes": [[1, 0], [1, 0]]}"#,
    );
    let p = path.to_str().unwrap();
    let (code, _, err) = geoent(&["overlap", "--input", p]);
    assert_eq!(code, 2, "{err}");
    let (code, _, err) = geoent(&[
        "canonicalize",
        "--builtin",
        "canonical:1,1,1,1,1,0",
        "--allow-unnormalized",
    ]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"), "{err}");
}

#[test]
fn dicke_and_ghz_overlap() {
    let v = structured(&["overlap", "--builtin", "dicke4"]);
    assert!((v["g_squared"].as_f64().unwrap() - 0.375).abs() < 1e-7);
    assert!(v["lambda1"].is_null());

    let v = structured(&["overlap", "--builtin", "ghz"]);
    assert!((v["g_squared"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["E_g"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
    assert!(v["stationarity_residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["converged"], Value::Bool(true));
}

#[test]
fn overlap_is_deterministic() {
    let args = [
        "overlap",
        "--builtin",
        "canonical:0.3,0.4,0.2,0.7,0.5,0.4",
        "--allow-unnormalized",
        "--restarts",
        "1",
        "--seed",
        "5",
    ];
    assert_eq!(geoent(&args), geoent(&args));
}

#[test]
fn structured_overlap_round_trips_through_the_state_format() {
    let raw = [
        0.1f64, 0.2, 0.3, -0.1, 0.0, 0.4, 0.2, 0.2, -0.3, 0.1, 0.5, 0.0, 0.1, -0.3, 0.2, 0.3,
    ];
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    let pairs: Vec<[f64; 2]> = raw.chunks(2).map(|c| [c[0] / norm, c[1] / norm]).collect();
    let normalized = serde_json::json!({ "n_qubits": 3, "amplitudes": pairs }).to_string();
    let path = temp_file("state.json", &normalized);

    let v = structured(&["overlap", "--input", path.to_str().unwrap()]);
    let product = parse_state(&v["nearest_product_state"].to_string(), false)
        .unwrap()
        .state;
    let input = parse_state(&normalized, false).unwrap().state;
    let fidelity = input.fidelity(&product).unwrap();
    assert!((fidelity - v["g_squared"].as_f64().unwrap()).abs() < 1e-12);

    let direct = nearest_product_state(&input, &SolverConfig::default()).unwrap();
    assert!(
        (overlap_with_product(&input, &direct.product)
            .unwrap()
            .powi(2)
            - fidelity)
            .abs()
            < 1e-12
    );
}

#[test]
fn canonicalize_reports_the_orbit_representative() {
    let v = structured(&["canonicalize", "--builtin", "ghz"]);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((v["params"]["d"].as_f64().unwrap() - r).abs() < 1e-9);
    assert!((v["params"]["h"].as_f64().unwrap() - r).abs() < 1e-9);
    let state: PureState = parse_state(&v["canonical_state"].to_string(), false)
        .unwrap()
        .state;
    assert_eq!(state.n_qubits(), 3);
}

#[test]
fn verify_theorem_campaign() {
    let v = structured(&["verify-theorem", "--family", "both", "--samples", "1000"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["campaigns"].as_array().unwrap().len(), 2);
    for c in v["campaigns"].as_array().unwrap() {
        assert!(c["max_deviation"].as_f64().unwrap() <= 1e-7);
        assert!(c["failures"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_theorem_reports_failures() {
    let (code, out, _) = geoent(&[
        "verify-theorem",
        "--family",
        "h-nonzero",
        "--samples",
        "30",
        "--tolerance",
        "1e-16",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL sample"), "{out}");
    assert!(out.contains("--builtin canonical:"), "{out}");

    // The printed --builtin argument reproduces the sample.
    let line = out.lines().find(|l| l.contains("FAIL sample")).unwrap();
    let arg = line.rsplit("--builtin ").next().unwrap();
    let (code, _, err) = geoent(&["overlap", "--builtin", arg]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn verify_theorem_is_reproducible() {
    let args = [
        "verify-theorem",
        "--family",
        "quadrilateral",
        "--samples",
        "40",
        "--seed",
        "9",
        "--format",
        "structured",
    ];
    assert_eq!(geoent(&args), geoent(&args));
}

#[test]
fn demos() {
    let (code, out, _) = geoent(&["demo", "ghz-sweep"]);
    assert_eq!(code, 0);
    let last_row = out.lines().rfind(|l| l.starts_with("5 ")).unwrap();
    assert!(
        last_row.contains("0.25") && last_row.matches("0.5").count() >= 2,
        "{last_row}"
    );

    let (code, out, _) = geoent(&["demo", "dicke4"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("g²=0.375, all Bloch vectors zero, theorem does NOT extend"),
        "{out}"
    );

    let v = structured(&["demo", "quadrilateral"]);
    assert!(v["max_discrepancy"].as_f64().unwrap() <= 1e-7);
    assert_eq!(v["samples"].as_array().unwrap().len(), 100);

    let v = structured(&["demo", "wn"]);
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn inverse_search_is_exploratory_and_reproducible() {
    let args = [
        "inverse-search",
        "--samples",
        "8",
        "--seed",
        "4",
        "--restarts",
        "16",
        "--format",
        "structured",
    ];
    let (code, out, _) = geoent(&args);
    assert_eq!(code, 0);
    assert_eq!(geoent(&args).1, out);
    let v: Value = serde_json::from_str(&out).unwrap();
    let controls: Vec<&Value> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["source"].as_str().unwrap().starts_with("control"))
        .collect();
    assert_eq!(controls.len(), 3);
    for c in controls {
        assert!(c["min_bloch"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_geoent");
    let ok = Command::new(bin)
        .args(["invariants", "--builtin", "ghz"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("tau = 1"));

    let bad = Command::new(bin)
        .args(["invariants", "--builtin", "bogus"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--builtin"));

    let fail = Command::new(bin)
        .args([
            "verify-theorem",
            "--family",
            "h-nonzero",
            "--samples",
            "5",
            "--tolerance",
            "1e-16",
        ])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
}
