use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn fsdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsdet")).args(args).env_remove("FSDET_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn bound_t4_reports_sixteen() {
    let out = fsdet(&["bound", "--theorem", "t4", "--params", "1,1,1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["command"], "bound");
    assert_eq!(v["results"][0]["value"].as_f64(), Some(16.0));
    assert_eq!(v["seed"], 42);
    assert!(v["version"].is_string());
}

#[test]
fn bound_accepts_several_values() {
    let out = fsdet(&["bound", "--theorem", "t1", "--params", "0,0.75,2"]);
    let v = json(&out);
    let values: Vec<f64> = v["results"].as_array().unwrap().iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert_eq!(values, vec![3.0, 1.0, 5.0]);
}

#[test]
fn table_corollary4_markdown() {
    let out = fsdet(&["table", "corollary4", "--format", "md"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("| [")).collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows.iter().filter(|r| r.ends_with("| true |")).count(), 3);
    assert_eq!(rows.iter().filter(|r| r.ends_with("| false |")).count(), 5);
    for lam in ["[1, 1, 1]", "[2, 1, 1]", "[1, 2, 2]"] {
        assert!(rows.iter().any(|r| r.starts_with(&format!("| {lam} |")) && r.ends_with("true |")), "{lam}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&fsdet(&["bound", "--theorem", "t9", "--params", "1"])), 2);
    assert_eq!(code(&fsdet(&["bound", "--theorem", "t1", "--params", "1", "--bogus"])), 2);
    assert_eq!(code(&fsdet(&["frobnicate"])), 2);
    // outside the theorem's hypothesis
    assert_eq!(code(&fsdet(&["bound", "--theorem", "t2", "--params", "-1"])), 2);
    assert_eq!(code(&fsdet(&["bound", "--theorem", "t4", "--params", "1,1"])), 2);
    assert_eq!(code(&fsdet(&["search", "--functional", "h3", "--params", "1,1,1", "--backend", "lemma3"])), 2);
    assert_eq!(code(&fsdet(&["eval", "--function", "no_such_thing", "--functional", "h3", "--params", "1,1,1"])), 2);
    assert_eq!(code(&fsdet(&["sweep", "--functional", "b2_1", "--grid", "1:0:0.5"])), 2);
    assert_eq!(code(&fsdet(&["--help"])), 0);
}

#[test]
fn eval_flags_non_starlike_catalog_entry() {
    let out = fsdet(&["eval", "--function", "paper_thm2_literal", "--functional", "b2_1", "--params", "2"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["suspect"], true);
    assert!((r["abs"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!(r["starlike_check"]["min_re"].as_f64().unwrap() < 0.0);

    let out = fsdet(&["eval", "--function", "koebe", "--functional", "hankel", "--params", "2,2,1,1"]);
    let r = &json(&out)["results"][0];
    // a2 a4 - a3^2 = 8 - 9
    assert!((r["re"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert_eq!(r["suspect"], false);
}

#[test]
fn coefficient_csv_round_trips_through_eval() {
    let out = fsdet(&["coeffs", "--function", "koebe", "--order", "6", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.starts_with("k,re,im\n0,0.0,0.0\n1,1.0,0.0\n2,2.0,0.0\n"), "{text}");

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&out.stdout).unwrap();
    let path = file.path().to_str().unwrap();
    let from_csv = fsdet(&["eval", "--function", path, "--functional", "h3", "--params", "1,1,1"]);
    let from_catalog = fsdet(&["eval", "--function", "koebe", "--functional", "h3", "--params", "1,1,1"]);
    assert_eq!(code(&from_csv), 0);
    assert_eq!(json(&from_csv)["results"][0]["re"], json(&from_catalog)["results"][0]["re"]);
}

#[test]
fn malformed_csv_is_an_input_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"k,re,im\n0,0.0,0.0\n2,1.0,0.0\n").unwrap();
    let out =
        fsdet(&["eval", "--function", file.path().to_str().unwrap(), "--functional", "fekete_szego", "--params", "0"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn seed_precedence() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "# test config\nseed = 11\nformat = json").unwrap();
    let cfg_path = cfg.path().to_str().unwrap();
    let seed = |out: Output| json(&out)["seed"].as_u64().unwrap();

    assert_eq!(seed(fsdet(&["table", "corollary4"])), 42);
    let with_env = Command::new(env!("CARGO_BIN_EXE_fsdet"))
        .args(["table", "corollary4"])
        .env("FSDET_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(seed(with_env), 5);
    let env_and_cfg = Command::new(env!("CARGO_BIN_EXE_fsdet"))
        .args(["table", "corollary4", "--config", cfg_path])
        .env("FSDET_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(seed(env_and_cfg), 11);
    assert_eq!(seed(fsdet(&["table", "corollary4", "--config", cfg_path, "--seed", "3"])), 3);
}

#[test]
fn config_rejects_unknown_keys() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "colour = blue").unwrap();
    let out = fsdet(&["table", "corollary4", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_lemmas_passes() {
    let out = fsdet(&["verify", "--suite", "lemmas", "--samples", "10000", "--seed", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_proofs_reports_the_failed_chain() {
    let out = fsdet(&["verify", "--suite", "proofs", "--grid", "128"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let failed: Vec<&Value> = v["results"].as_array().unwrap().iter().filter(|r| r["pass"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["check"], "G1(c) <= G2(c)");
    assert_eq!(failed[0]["suite"], "proofs:t2");
}

#[test]
fn search_flags_piecewise_excess() {
    let out = fsdet(&["search", "--functional", "h2_2", "--params", "0.72", "--restarts", "8"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert!(r["value"].as_f64().unwrap() >= 1.52 - 1e-6);
    assert_eq!(r["exceeds_alt_bound"], true);
    assert_eq!(r["bound"]["consistent"], false);
    assert_eq!(r["witness"]["kind"], "atoms");
}

#[test]
fn sweep_over_grid() {
    let out = fsdet(&[
        "sweep",
        "--functional",
        "fekete_szego",
        "--grid",
        "0:1:0.5",
        "--restarts",
        "8",
        "--lemma3-grid",
        "17",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains(",status,"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert!(row.contains(",attained,"), "{row}");
    }
}
