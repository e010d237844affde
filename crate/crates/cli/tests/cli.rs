use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use modelsel_core::feature_model::{parse_feature_model, validate_configuration, Configuration};
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn modelsel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modelsel"))
        .args(args)
        .env_remove("MODELSEL_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ranked(v: &Value) -> Vec<&str> {
    v["ranked"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap())
        .collect()
}

#[test]
fn profile_heart_csv() {
    let csv = fixture("heart_failure_clinical_records_dataset.csv");
    let out = modelsel(&["profile", path(&csv), "--target", "DEATH_EVENT"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["n_rows"], 299);
    assert_eq!(v["n_columns"], 13);
    assert_eq!(v["target_type"], "binary_categorical");
    assert_eq!(v["quality"]["unbalanced"], true);
    let fixture_json: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("heart.profile.json")).unwrap())
            .unwrap();
    assert_eq!(v, fixture_json);
}

#[test]
fn profile_exit_codes() {
    let csv = fixture("heart_failure_clinical_records_dataset.csv");
    assert_eq!(code(&modelsel(&["profile", "/nonexistent/x.csv"])), 2);
    assert_eq!(
        code(&modelsel(&["profile", path(&csv), "--target", "nope"])),
        1
    );

    let dir = TempDir::new().unwrap();
    let ragged = dir.path().join("ragged.csv");
    std::fs::write(&ragged, "a,b\n1,2,3\n").unwrap();
    assert_eq!(code(&modelsel(&["profile", path(&ragged)])), 2);
    assert_eq!(code(&modelsel(&["no-such-command"])), 2);
}

#[test]
fn text_format() {
    let csv = fixture("heart_failure_clinical_records_dataset.csv");
    let out = modelsel(&[
        "--format",
        "text",
        "profile",
        path(&csv),
        "--target",
        "DEATH_EVENT",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rows: 299"));
    assert!(text.contains("DEATH_EVENT"));
}

#[test]
fn golden_recommendations() {
    let cases = [
        ("heart", "gpt", false, "LogisticRegression"),
        ("diabetes", "gpt", true, "LogisticRegression"),
        ("cars", "gpt", true, "RandomForestRegressor"),
        ("heart", "cheatsheet", false, "LinearSVC"),
        ("diabetes", "cheatsheet", true, "SGDClassifier"),
        ("cars", "cheatsheet", true, "Ridge"),
    ];
    for (name, heuristic, nonlinear, first) in cases {
        let profile = fixture(&format!("{name}.profile.json"));
        let mut args = vec![
            "recommend",
            "--profile",
            path(&profile),
            "--heuristic",
            heuristic,
        ];
        if nonlinear {
            args.push("--nonlinear");
        }
        let out = modelsel(&args);
        assert_eq!(code(&out), 0, "{name}/{heuristic}");
        assert_eq!(ranked(&json(&out))[0], first, "{name}/{heuristic}");
    }
}

#[test]
fn recommend_errors() {
    let profile = fixture("heart.profile.json");
    let p = path(&profile);
    let out = modelsel(&["recommend", "--profile", p, "--heuristic", "magic"]);
    assert_eq!(code(&out), 1);
    let out = modelsel(&[
        "recommend",
        "--profile",
        p,
        "--heuristic",
        "cheatsheet",
        "--min-size-requirement",
        "1000",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("299"));
    let out = modelsel(&["recommend", "--profile", p, "--svm-row-limit", "0"]);
    assert_eq!(code(&out), 1);
    let out = modelsel(&["recommend", "--profile", p, "--problem", "astrology"]);
    assert_eq!(code(&out), 1);
    let out = modelsel(&[
        "recommend",
        "--profile",
        path(&fixture("transition_steps.fml")),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn compare_overlap() {
    let out = modelsel(&["compare", "--profile", path(&fixture("heart.profile.json"))]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["overlap"], serde_json::json!(["SVC"]));

    let out = modelsel(&[
        "compare",
        "--profile",
        path(&fixture("cars.profile.json")),
        "--nonlinear",
    ]);
    let v = json(&out);
    let overlap: Vec<&str> = v["overlap"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap())
        .collect();
    assert!(overlap.contains(&"Ridge") && overlap.contains(&"SVR"));
}

#[test]
fn validate_and_enumerate() {
    let fml = fixture("transition_steps.fml");
    let out = modelsel(&["enumerate", "--model", path(&fml)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["total"], 8);
    assert_eq!(v["truncated"], false);
    let first: Vec<String> = v["configurations"][0]["selected"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();

    let out = modelsel(&[
        "validate",
        "--model",
        path(&fml),
        "--config",
        &first.join(","),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["valid"], true);

    let out = modelsel(&["validate", "--model", path(&fml), "--config", "NotAFeature"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);

    let out = modelsel(&["enumerate", "--model", path(&fml), "--limit", "3"]);
    let v = json(&out);
    assert_eq!(v["configurations"].as_array().unwrap().len(), 3);
    assert_eq!(v["truncated"], true);

    let out = modelsel(&["enumerate", "--model", path(&fixture("gpt_overall.fml"))]);
    assert_eq!(code(&out), 1);

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.fml");
    std::fs::write(&bad, "features { }").unwrap();
    assert_eq!(code(&modelsel(&["enumerate", "--model", path(&bad)])), 2);
}

fn write_report(dir: &Path, model: &str) -> PathBuf {
    let all: Value = serde_json::from_str(
        &std::fs::read_to_string(fixture("reference_metrics/heart.json")).unwrap(),
    )
    .unwrap();
    let report = all
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["model"] == model)
        .unwrap();
    let p = dir.join(format!("{model}.json"));
    std::fs::write(&p, report.to_string()).unwrap();
    p
}

fn start_heart_session(dir: &Path, extra: &[&str]) -> PathBuf {
    let rec = dir.join("rec.json");
    let out = modelsel(&[
        "recommend",
        "--profile",
        path(&fixture("heart.profile.json")),
    ]);
    std::fs::write(&rec, &out.stdout).unwrap();
    let state = dir.join("state.json");
    let mut args = vec![
        "session",
        "start",
        "--recommendation",
        path(&rec),
        "--out",
        path(&state),
    ];
    args.extend_from_slice(extra);
    let out = modelsel(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["cursor"], 0);
    state
}

fn observe(state: &Path, report: &Path) -> Output {
    modelsel(&[
        "session",
        "observe",
        "--state",
        path(state),
        "--report",
        path(report),
        "--out",
        path(state),
    ])
}

#[test]
fn session_replay() {
    let dir = TempDir::new().unwrap();
    let state = start_heart_session(dir.path(), &["--threshold", "roc_auc=0.90"]);
    let mut kinds = Vec::new();
    for model in [
        "LogisticRegression",
        "RandomForestClassifier",
        "GradientBoostingClassifier",
    ] {
        let out = observe(&state, &write_report(dir.path(), model));
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        kinds.push(v["decision"]["kind"].as_str().unwrap().to_string());
        if v["decision"]["kind"] == "stop" {
            assert_eq!(v["decision"]["reason"], "Exhausted");
            assert_eq!(
                v["decision"]["best_so_far"]["model"],
                "RandomForestClassifier"
            );
            assert_eq!(v["decision"]["best_so_far"]["value"], 0.8896);
        }
    }
    assert_eq!(kinds, ["advance", "advance", "stop"]);
    let out = observe(&state, &write_report(dir.path(), "SVC"));
    assert_eq!(code(&out), 1);
}

#[test]
fn session_satisfied_and_wrong_model() {
    let dir = TempDir::new().unwrap();
    let state = start_heart_session(dir.path(), &[]);
    let out = observe(&state, &write_report(dir.path(), "RandomForestClassifier"));
    assert_eq!(code(&out), 1);
    let out = observe(&state, &write_report(dir.path(), "LogisticRegression"));
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["decision"]["kind"], "stop");
    assert_eq!(v["decision"]["reason"], "Satisfied");
}

#[test]
fn session_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let state = start_heart_session(dir.path(), &[]);
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&observe(&state, &junk)), 2);
    let out = modelsel(&[
        "session",
        "start",
        "--recommendation",
        path(&fixture("heart.profile.json")),
    ]);
    assert_eq!(code(&out), 2);
    let rec = dir.path().join("rec.json");
    let out = modelsel(&[
        "session",
        "start",
        "--recommendation",
        path(&rec),
        "--threshold",
        "roc_auc",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn prompt_command() {
    let out = modelsel(&[
        "prompt",
        "--profile",
        path(&fixture("heart.profile.json")),
        "--objective",
        "predicting survival",
    ]);
    assert_eq!(code(&out), 0);
    let prompt = json(&out)["prompt"].as_str().unwrap().to_string();
    assert!(prompt.starts_with(
        "Given the attached dataset {heart_failure_clinical_records_dataset.csv}, with the target variable in column {'DEATH_EVENT'}, and the objective of predicting survival, "
    ));
}

#[test]
fn config_file_and_env() {
    let dir = TempDir::new().unwrap();
    let toml = dir.path().join("cfg.toml");
    std::fs::write(&toml, "[heuristics]\nmin_size_requirement = 1000\n").unwrap();
    let profile = fixture("heart.profile.json");
    let args = [
        "recommend",
        "--profile",
        path(&profile),
        "--heuristic",
        "cheatsheet",
    ];

    let mut with_flag = vec!["--config", path(&toml)];
    with_flag.extend_from_slice(&args);
    assert_eq!(code(&modelsel(&with_flag)), 1);

    let out = Command::new(env!("CARGO_BIN_EXE_modelsel"))
        .args(args)
        .env("MODELSEL_CONFIG", &toml)
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);

    let json_cfg = dir.path().join("cfg.json");
    std::fs::write(
        &json_cfg,
        r#"{"transition": {"satisfaction": {"roc_auc": 0.95}}}"#,
    )
    .unwrap();
    let rec = dir.path().join("rec.json");
    std::fs::write(
        &rec,
        modelsel(&["recommend", "--profile", path(&profile)]).stdout,
    )
    .unwrap();
    let out = modelsel(&[
        "--config",
        path(&json_cfg),
        "session",
        "start",
        "--recommendation",
        path(&rec),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["policy"]["satisfaction"]["roc_auc"], 0.95);

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[heuristics]\nno_such_key = 1\n").unwrap();
    let mut with_bad = vec!["--config", path(&bad)];
    with_bad.extend_from_slice(&args);
    assert_eq!(code(&modelsel(&with_bad)), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // validate exits 0 exactly when the configuration is valid, and always
    // prints a report.
    #[test]
    fn validate_exit_code_matches_the_report(mask in 0u32..(1 << 12)) {
        let fml = fixture("cheatsheet_classification.fml");
        let fm = parse_feature_model(&std::fs::read_to_string(&fml).unwrap()).unwrap();
        let names: Vec<&str> = fm
            .feature_names()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, n)| n.as_str())
            .collect();
        let expected = validate_configuration(&fm, &Configuration::new(names.clone())).valid;
        let out = modelsel(&["validate", "--model", path(&fml), "--config", &names.join(",")]);
        prop_assert_eq!(code(&out), if expected { 0 } else { 1 });
        prop_assert_eq!(json(&out)["valid"].as_bool(), Some(expected));
    }

    // Arbitrary bytes never crash the profiler: they profile, or fail with
    // a domain (1) or input (2) error.
    #[test]
    fn profile_never_crashes(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let dir = TempDir::new().unwrap();
        let f = dir.path().join("x.csv");
        std::fs::write(&f, &bytes).unwrap();
        let c = code(&modelsel(&["profile", path(&f)]));
        prop_assert!(matches!(c, 0..=2), "exit {}", c);
    }
}
