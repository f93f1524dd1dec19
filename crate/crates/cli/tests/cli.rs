use std::process::Command;

use serde_json::Value;
use witt_cli::{run, Command as Check, RunConfig};

fn wittcheck(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wittcheck")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn rho_report_shape() {
    let (code, stdout) = wittcheck(&["rho"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["subcommand"], "rho");
    assert_eq!(v["config"]["maxDegree"], 8);
    let verdicts = &v["results"]["rho"]["verdicts"];
    assert_eq!(verdicts["deg5_identity"], true);
    assert_eq!(verdicts["deg7_identity"], true);
    assert_eq!(v["passed"], true);
}

#[test]
fn presentation_verdicts() {
    let out = run(Check::Presentation, &RunConfig::default()).unwrap();
    let verdicts = &out.report["results"]["presentation"]["verdicts"];
    for key in ["rel5_zero", "rel7_zero", "rel7_not_in_ideal"] {
        assert_eq!(verdicts[key], true, "{key}");
    }
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn base_locus_points_serialize_as_integer_strings() {
    let cfg = RunConfig { max_degree: 5, ..RunConfig::default() };
    let out = run(Check::BaseLocus, &cfg).unwrap();
    let rows = out.report["results"]["base-locus"]["tables"]["base_locus"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["points"][0], serde_json::json!(["0", "1", "-2", "4"]));
    for row in rows {
        assert_eq!(row["points"], row["expected"]);
    }
    assert!(out.passed);
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(wittcheck(&["gk", "--gk-window", "8:9"]).0, Some(2));
    assert_eq!(wittcheck(&["thick", "--max-degree", "1"]).0, Some(2));
    assert_eq!(wittcheck(&["witness", "--witness-k", "3", "--witness-m", "3"]).0, Some(2));
    assert_eq!(wittcheck(&["gk", "--gk-window", "eight"]).0, Some(2));
    assert_eq!(wittcheck(&["frobnicate"]).0, Some(2));
}

#[test]
fn out_flag_writes_the_same_report() {
    let path = std::env::temp_dir().join(format!("wittcheck-{}.json", std::process::id()));
    let (code, stdout) = wittcheck(&["cartan"]);
    assert_eq!(code, Some(0));
    let (code2, empty) = wittcheck(&["cartan", "--out", path.to_str().unwrap()]);
    assert_eq!(code2, Some(0));
    assert!(empty.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn small_gk_window_runs() {
    let cfg = RunConfig { gk_window: (8, 14), ..RunConfig::default() };
    let out = run(Check::Gk, &cfg).unwrap();
    let slope = out.report["results"]["gk"]["values"]["slope"].as_f64().unwrap();
    assert!(slope > 1.5 && slope < 3.5, "{slope}");
    assert!(out.report["results"]["gk"]["values"]["slope_rational"].as_str().unwrap().contains('/'));
}
