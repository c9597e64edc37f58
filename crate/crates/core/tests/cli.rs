use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn hamiso(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hamiso")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, text)
}

#[test]
fn weight_of_weighted_member() {
    let (code, v, _) = hamiso(&["weight", "--code", &data("weighted.json"), "--coeffs", "1,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["weight"], "5/2");
    assert_eq!(v["coz"], serde_json::json!(["a", "c"]));
    assert_eq!(v["schema_version"], "hamiso-report/1");
    assert_eq!(v["config"]["max_enum"], 1 << 20);
}

#[test]
fn integer_weights_print_without_denominator() {
    let (code, v, _) = hamiso(&["weight", "--code", &data("weighted.json"), "--coeffs", "0,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["weight"], "3");
}

#[test]
fn identity_decomposes_with_unit_weights() {
    let (code, v, _) = hamiso(&["decompose", "--map", &data("identity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "composition");
    assert_eq!(v["omega"], serde_json::json!({"a": 1, "b": 1, "c": 1}));
    assert_eq!(v["h"], serde_json::json!({"a": "a", "b": "b", "c": "c"}));
    assert_eq!(v["monomial"], serde_json::json!({"sigma": [0, 1, 2], "w": [1, 1, 1]}));
}

#[test]
fn shear_is_refuted_with_exit_two() {
    let (code, v, _) = hamiso(&["decompose", "--map", &data("shear.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "refuted");
    assert_eq!(v["witness"], serde_json::json!({"y": "b", "functional": [1, 1]}));
    let (code, v, _) = hamiso(&["separating", "--map", &data("shear.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["separating"], false);
    assert_eq!(v["mode"], "exact");
    let (code, v, _) = hamiso(&["isometry", "--map", &data("shear.json")]);
    assert_eq!(code, 2);
    assert_eq!((v["injective"].as_bool(), v["weight_preserving"].as_bool()), (Some(true), Some(false)));
    let (code, _, _) = hamiso(&["monomial-form", "--map", &data("shear.json")]);
    assert_eq!(code, 2);
}

#[test]
fn planted_pair_is_equivalent() {
    let (code, v, _) = hamiso(&["macwilliams", "--c1", &data("ternary_a.json"), "--c2", &data("ternary_b.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["decompose_roundtrip"], true);
    assert!(v["monomial"]["sigma"].is_array());
    assert!(v["isometry_matrix"].is_array());
    let (code, v, _) = hamiso(&["macwilliams", "--c1", &data("ternary_a.json"), "--c2", &data("ternary_a.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["monomial"], serde_json::json!({"sigma": [0, 1, 2, 3], "w": [1, 1, 1, 1]}));
}

#[test]
fn code_queries() {
    let (code, v, _) = hamiso(&["quotient", "--code", &data("parity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["classes"], serde_json::json!([["x1"], ["x2"], ["x3"]]));
    let (code, v, _) = hamiso(&["ring", "--code", &data("parity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 8);
    let (code, v, _) = hamiso(&["controllable", "--code", &data("parity.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["controllable"], false);
    assert!(v["witness"]["d1"].is_array());
    let (code, v, _) = hamiso(&["controllable", "--code", &data("plane.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["witness"], Value::Null);
    let (code, v, _) = hamiso(&["distance", "--code", &data("weighted.json"), "--f", "1,1,0", "--g", "0,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["distance"], "5/2");
}

#[test]
fn verify_reports_properties() {
    let (code, v, _) = hamiso(&["verify", "--map", &data("identity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verify"]["ok"], true);
    assert_eq!(v["verify"]["full_check"], true);
    assert_eq!(v["h_properties"]["class_bijection"], true);
}

#[test]
fn errors_name_the_field() {
    let (code, v, _) = hamiso(&["ring", "--code", &data("parity.json"), "--max-enum", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "GuardExceeded");
    assert_eq!(v["error"]["field"], "--max-enum");

    let dir = std::env::temp_dir().join(format!("hamiso-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"field": {"p": 3}, "space": {"labels": ["a", "b"], "measures": [1, "-1"]}, "rows": [[1, 1]]}"#,
    )
    .unwrap();
    let (code, v, _) = hamiso(&["quotient", "--code", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SchemaViolation");
    assert_eq!(v["error"]["field"], "space.measures[1]");

    std::fs::write(&bad, "{not json").unwrap();
    let (code, v, _) = hamiso(&["quotient", "--code", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "ParseError");

    let (code, v, _) = hamiso(&["weight", "--code", &data("weighted.json"), "--coeffs", "1,x,1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["field"], "--coeffs[1]");

    let (code, v, _) = hamiso(&["separating", "--map", &data("shear.json"), "--samples", "5"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "ParseError");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn sampled_checks_say_so() {
    let (code, v, _) = hamiso(&["isometry", "--map", &data("identity.json"), "--samples", "5", "--seed", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["mode"], "probabilistic");
    assert_eq!(v["config"]["seed"], 9);
}

#[test]
fn output_flag_writes_file() {
    let path: PathBuf = std::env::temp_dir().join(format!("hamiso-out-{}.json", std::process::id()));
    let (code, _, stdout) = hamiso(&["quotient", "--code", &data("parity.json"), "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["command"], "quotient");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn reports_are_deterministic_with_sorted_keys() {
    let args = ["selftest", "--seed", "3", "--codes", "4", "--maps", "4"];
    let (code, v, first) = hamiso(&args);
    assert_eq!(code, 0, "{first}");
    assert_eq!(v["passed"], true);
    let (_, _, second) = hamiso(&args);
    assert_eq!(first, second);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn library_entry_point_matches_binary() {
    let args = ["hamiso", "decompose", "--map", &data("identity.json")];
    let report = hamming_iso::cli::run(args).unwrap();
    let (code, _, text) = hamiso(&args[1..]);
    assert_eq!((report.code, report.json), (code, text));
}
