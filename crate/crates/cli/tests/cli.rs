use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("antican").chain(args.iter().copied());
    let code = antican_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert!(err.is_empty() || code != 0, "{err}");
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("antican-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn antican_on_group_as_symmetric_space() {
    let (code, out, _) = run(&["antican", "catalog:brion_5_1", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("Div s = 2 D1 + 2 D2 + 2 D3"), "{out}");
    let (_, v) = run_json(&["antican", "catalog:brion_5_1", "--n", "4"]);
    let ms: Vec<u64> = v["colors"].as_array().unwrap().iter().map(|c| c["m"].as_u64().unwrap()).collect();
    assert_eq!(ms, vec![2, 2, 2]);
}

#[test]
fn table_and_json_agree() {
    for (key, n) in [("brion_5_4", "6"), ("sl2_mod_T", ""), ("toric", "2")] {
        let mut args = vec!["antican", key];
        let target = format!("catalog:{key}");
        args[1] = &target;
        if !n.is_empty() {
            args.extend(["--n", n]);
        }
        let (_, table) = {
            let (c, o, _) = run(&args);
            (c, o)
        };
        let (_, v) = run_json(&args);
        for c in v["colors"].as_array().unwrap() {
            let line = format!("{}  ", c["name"].as_str().unwrap());
            let row = table.lines().find(|l| l.starts_with(&line)).unwrap();
            assert!(row.trim_end().ends_with(&c["m"].to_string()), "{row}");
        }
        assert!(table.contains(v["divisor"].as_str().unwrap()));
    }
}

#[test]
fn types_both_on_diagonal_sl2_cubed() {
    let (code, v) = run_json(&["types", "catalog:brion_5_2", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], true);
    for c in v["colors"].as_array().unwrap() {
        assert_eq!(c["luna"], "a");
        assert_eq!(c["knop"], "a");
        assert_eq!(c["agree"], true);
    }
    let (_, out, _) = run(&["types", "catalog:brion_5_2"]);
    assert!(out.lines().next().unwrap().ends_with("agree"));
}

#[test]
fn disagreeing_methods_exit_one() {
    // SL(2)/U with a spherical root claiming type a
    let (_, mut v) = run_json(&["catalog", "dump", "sl2_mod_U"]);
    v["colors"][0]["type"] = Value::Null;
    v["spherical_roots"] = serde_json::json!([{ "fund": ["2"] }]);
    v["M"] = serde_json::json!([{ "fund": ["2"] }]);
    let path = temp_file("disagree.json", &v.to_string());
    let (code, out, _) = run(&["types", path.to_str().unwrap(), "--method", "both"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("NO"));
    let (code, _, _) = run(&["types", path.to_str().unwrap(), "--method", "luna"]);
    assert_eq!(code, 0);
}

#[test]
fn validate_flags_three_colors_on_one_root() {
    let body = r#"{
        "version": "sphdatum/1",
        "root_system": "A1",
        "colors": [
            {"name": "D1", "moved_by": ["a1"]},
            {"name": "D2", "moved_by": ["a1"]},
            {"name": "D3", "moved_by": ["a1"]}
        ]
    }"#;
    let path = temp_file("three.json", body);
    let (code, out, _) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    let row = out.lines().find(|l| l.contains("delta_bound")).unwrap();
    assert!(row.starts_with("FAIL"), "{row}");
    let (code, v) = run_json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
}

#[test]
fn dumps_parse_back() {
    for (key, n) in [("brion_5_3", Some("4")), ("brion_5_2", None), ("toric", Some("3"))] {
        let mut args = vec!["catalog", "dump", key];
        if let Some(n) = n {
            args.extend(["--n", n]);
        }
        let (code, out, _) = run(&args);
        assert_eq!(code, 0);
        let d = antican::parse_datum(&out).unwrap();
        let path = temp_file(&format!("{key}.json"), &out);
        let (code, report, _) = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{report}");
        assert_eq!(d.to_json() + "\n", out);
    }
}

#[test]
fn verify_runs_the_uniqueness_search() {
    let (code, v) = run_json(&["verify", "catalog:brion_5_4", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["decomposition"], true);
    assert_eq!(v["uniqueness"]["solutions"], serde_json::json!([[4, 4]]));
    let (_, v) = run_json(&["verify", "catalog:brion_5_1", "--n", "10"]);
    assert_eq!(v["uniqueness"], Value::Null);
}

#[test]
fn cone_membership() {
    let (code, v) = run_json(&["cone", "catalog:brion_5_2", "--contains", "-1,0,-1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["contains"]["inside"], true);
    assert_eq!(v["certificate"]["holds"], true);
    let (_, v) = run_json(&["cone", "catalog:brion_5_2", "--contains", "1,0,0"]);
    assert_eq!(v["contains"]["inside"], false);
    let (code, _, err) = run(&["cone", "catalog:brion_5_2", "--contains", "1,0"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&["cone", "catalog:brion_5_1"]);
    assert_eq!(code, 1);
}

#[test]
fn roots_and_kappa() {
    let (code, v) = run_json(&["roots", "G2"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 6);
    let (_, v) = run_json(&["roots", "A4", "--subset", "a2,a3"]);
    assert_eq!(v["count"], 3);
    assert_eq!(v["rho"]["fund"], serde_json::json!(["-1", "1", "1", "-1"]));
    let (_, v) = run_json(&["kappa", "catalog:brion_5_4", "--n", "5"]);
    assert_eq!(v["kappa"]["fund"], serde_json::json!(["4", "0", "0", "4"]));
    assert_eq!(v["sp"], serde_json::json!(["a2", "a3"]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bogus"],
        vec!["antican", "catalog:nope"],
        vec!["antican", "catalog:brion_5_4", "--n", "11"],
        vec!["antican", "/nonexistent/file.json"],
        vec!["roots", "X3"],
        vec!["roots", "A2", "--subset", "a7"],
        vec!["types", "catalog:brion_5_2", "--method", "other"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("antican"));
}

#[test]
fn malformed_datum_exits_one() {
    let path = temp_file("broken.json", "{\"version\": \"sphdatum/1\", \"root_system\": \"A1\",,}");
    let (code, _, err) = run(&["kappa", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--json", "verify", "catalog:brion_5_3", "--n", "5"]);
    let b = run(&["--json", "verify", "catalog:brion_5_3", "--n", "5"]);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_antican");
    let ok = Command::new(bin).args(["kappa", "catalog:sl2_mod_T"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("kappa_P = (2)"));
    let bad = Command::new(bin).args(["catalog", "dump", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
