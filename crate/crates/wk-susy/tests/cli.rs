//! End-to-end checks of the command-line surface: exit codes, report
//! formats, config validation and the environment tolerance override.

use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wk-susy"))
}

fn write_config(dir: &std::path::Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn temp_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("wk-susy-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_shorthand_passes_and_prints_text() {
    let out = binary()
        .args(["verify", "--model", "oscillator", "--k", "3", "--d", "40"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("wk.ladder_commutator"));
    assert!(text.contains("overall: pass"));
}

#[test]
fn verify_shorthand_supports_other_scenarios() {
    let out = binary()
        .args([
            "verify", "--model", "oscillator", "--k", "3", "--d", "24", "--scenario",
            "verify-susy",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("susy.multilinear_closure"));
}

#[test]
fn run_emits_canonical_json() {
    let dir = temp_dir("json");
    let config = write_config(
        &dir,
        "config.json",
        r#"{"scenario":"verify-wk","model":{"model":"oscillator","k":2,"d":10}}"#,
    );
    let strip_wall_time = |s: &str| -> String {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_s");
        serde_json::to_string(&v).unwrap()
    };
    let out1 = binary().args(["run", "--config"]).arg(&config).output().unwrap();
    assert!(out1.status.success());
    let out2 = binary().args(["run", "--config"]).arg(&config).output().unwrap();
    let a = strip_wall_time(&String::from_utf8_lossy(&out1.stdout));
    let b = strip_wall_time(&String::from_utf8_lossy(&out2.stdout));
    assert_eq!(a, b, "reports must be deterministic modulo wall time");
    let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(parsed["scenario"], "verify-wk");
    assert_eq!(parsed["overall_pass"], true);
    assert!(parsed["checks"].as_array().unwrap().len() > 5);
}

#[test]
fn spectrum_csv_has_the_pinned_header() {
    let dir = temp_dir("csv");
    let config = write_config(
        &dir,
        "spectrum.json",
        r#"{"scenario":"spectrum","model":{"model":"oscillator","k":3,"d":40}}"#,
    );
    let out = binary()
        .args(["run", "--format", "csv", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "energy,multiplicity");
    // first group is the nondegenerate ground level at -1
    let first = lines.next().unwrap();
    assert!(first.ends_with(",1"), "{first}");
    assert!(first.starts_with("-1."), "{first}");
}

#[test]
fn bad_grading_order_exits_two() {
    let dir = temp_dir("badk");
    let config = write_config(
        &dir,
        "bad.json",
        r#"{"scenario":"verify-wk","model":{"model":"oscillator","k":1,"d":10}}"#,
    );
    let out = binary().args(["run", "--config"]).arg(&config).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model.k"));
}

#[test]
fn unknown_scenario_exits_two() {
    let dir = temp_dir("badscenario");
    let config = write_config(
        &dir,
        "bad.json",
        r#"{"scenario":"everything","model":{"model":"oscillator","k":2,"d":10}}"#,
    );
    let out = binary().args(["run", "--config"]).arg(&config).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_domain_model_exits_two() {
    // a terminating family truncated too deep is a configuration error
    let dir = temp_dir("morse");
    let config = write_config(
        &dir,
        "deep.json",
        r#"{"scenario":"verify-wk","model":{"model":"linear","k":2,"d":40,"params":{"a":-0.2,"b":2.0}}}"#,
    );
    let out = binary().args(["run", "--config"]).arg(&config).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative"));
}

#[test]
fn env_tolerance_tightening_fails_checks_with_exit_one() {
    let out = binary()
        .args(["verify", "--model", "oscillator", "--k", "2", "--d", "20"])
        .env("WK_SUSY_TOL", "1e-18")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn invalid_env_tolerance_exits_two() {
    let out = binary()
        .args(["verify", "--model", "oscillator", "--k", "2", "--d", "10"])
        .env("WK_SUSY_TOL", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_file_output() {
    let dir = temp_dir("outfile");
    let config = write_config(
        &dir,
        "config.json",
        r#"{"scenario":"grassmann","model":{"model":"oscillator","k":4,"d":8},
            "output":{"format":"json","path":"report.json"}}"#,
    );
    let report_path = dir.join("report.json");
    let out = binary()
        .current_dir(&dir)
        .args(["run", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let written = std::fs::read_to_string(&report_path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(parsed["scenario"], "grassmann");
}

#[test]
fn coherent_scenario_via_config() {
    let dir = temp_dir("coherent");
    let config = write_config(
        &dir,
        "coherent.json",
        r#"{"scenario":"coherent","model":{"model":"oscillator","k":3,"d":24},
            "coherent":{"z":[0.8,-0.3],"t":[0.37,1.9],"depth":24,"margin":4}}"#,
    );
    let out = binary().args(["run", "--config"]).arg(&config).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let names: Vec<&str> = parsed["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.iter().any(|n| n.starts_with("coherent.lowering")));
    assert!(names.iter().any(|n| n.contains("evolution_sector")));
}

#[test]
fn quon_scenario_reports_monotone_residuals() {
    let dir = temp_dir("quon");
    let config = write_config(
        &dir,
        "quon.json",
        r#"{"scenario":"quon-limit","model":{"model":"oscillator","k":2,"d":24}}"#,
    );
    let out = binary().args(["run", "--config"]).arg(&config).output().unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    let checks = parsed["checks"].as_array().unwrap();
    let monotone = checks
        .iter()
        .find(|c| c["name"] == "quon.residual_strictly_decreasing")
        .unwrap();
    assert_eq!(monotone["pass"], true);
}
