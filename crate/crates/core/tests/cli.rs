use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn dqscore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqscore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn score_writes_json_to_stdout() {
    let out = dqscore(&[
        "score",
        "--data",
        path(&data("survey.csv")),
        "--codebook",
        path(&data("survey_codebook.csv")),
        "--manifest",
        path(&data("survey_manifest.json")),
        "--today",
        "2026-10-16",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["row_count"], 62);
    assert!(report["dq_score"].as_f64().unwrap() > 0.0);
    assert_eq!(report["label"]["entries"].as_array().unwrap().len(), 9);
}

#[test]
fn config_file_supplies_flags_and_command_line_wins() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    let html = dir.path().join("report.html");
    std::fs::write(
        &config,
        serde_json::json!({
            "data": path(&data("survey.csv")),
            "codebook": path(&data("survey_codebook.csv")),
            "today": "2026-10-16",
            "format": "text",
            "correlation_threshold": 0.99,
        })
        .to_string(),
    )
    .unwrap();
    let out = dqscore(&[
        "score",
        "--config",
        path(&config),
        "--format",
        "html",
        "--out",
        path(&html),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let page = std::fs::read_to_string(&html).unwrap();
    assert!(page.starts_with("<!DOCTYPE html>"));
    assert!(page.contains("dq-missing") && page.contains("dq-duplicate"));
}

#[test]
fn refit_writes_weights_file() {
    let dir = tempfile::tempdir().unwrap();
    let weights = dir.path().join("weights.json");
    let loadings = dir.path().join("loadings.json");
    let out = dqscore(&[
        "refit",
        "--training",
        path(&data("training.csv")),
        "--out",
        path(&weights),
        "--loadings-out",
        path(&loadings),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed = dqscore::scoring::WeightVector::from_json(&std::fs::read(&weights).unwrap()).unwrap();
    assert!((parsed.values().iter().sum::<f64>() - 100.0).abs() < 1e-9);

    let scored = dqscore(&[
        "score",
        "--data",
        path(&data("survey.csv")),
        "--weights",
        path(&weights),
    ]);
    assert_eq!(
        scored.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&scored.stderr)
    );
}

#[test]
fn mutate_emits_dataset_codebook_and_suite() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, cb) = (dir.path().join("mutated.csv"), dir.path().join("mutated_codebook.csv"));
    let (input, codebook) = (data("survey.csv"), data("survey_codebook.csv"));
    let args = [
        "mutate",
        "--data",
        path(&input),
        "--codebook",
        path(&codebook),
        "--kind",
        "inject_missing",
        "--magnitude",
        "0.1",
        "--seed",
        "3",
        "--out-data",
        path(&csv),
        "--out-codebook",
        path(&cb),
    ];
    let out = dqscore(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let suite: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(suite["outcomes"][0]["verdict"], "PASS");
    let first = std::fs::read(&csv).unwrap();
    assert!(std::fs::read(&cb)
        .unwrap()
        .starts_with(b"column,description,declared_type"));

    let again = dqscore(&args);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(std::fs::read(&csv).unwrap(), first);
}

#[test]
fn label_rerenders_a_stored_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = dqscore(&["score", "--data", path(&data("survey.csv")), "--out", path(&report)]);
    assert_eq!(out.status.code(), Some(0));
    let text = dqscore(&["label", "--input", path(&report), "--format", "text"]);
    assert_eq!(text.status.code(), Some(0), "{}", String::from_utf8_lossy(&text.stderr));
    assert!(String::from_utf8_lossy(&text.stdout).contains("DQ SCORE"));
}

#[test]
fn usage_and_validation_exit_codes() {
    let missing = dqscore(&["score"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--data"));

    let unreadable = dqscore(&["score", "--data", "/no/such/file.csv"]);
    assert_eq!(unreadable.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unreadable.stderr).contains("/no/such/file.csv"));

    let bad_format = dqscore(&["score", "--data", path(&data("survey.csv")), "--format", "xls"]);
    assert_eq!(bad_format.status.code(), Some(2));
}

#[test]
fn every_subcommand_documents_its_flags() {
    for (sub, flags) in [
        (
            "score",
            &[
                "--data",
                "--codebook",
                "--manifest",
                "--reference",
                "--weights",
                "--format",
                "--out",
            ][..],
        ),
        ("refit", &["--training", "--out"]),
        ("mutate", &["--kind", "--magnitude", "--seed", "--specs", "--out-data"]),
        ("similarity", &["--format"]),
        ("label", &["--input", "--format", "--out"]),
    ] {
        let out = dqscore(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0));
        let help = String::from_utf8_lossy(&out.stdout);
        for flag in flags {
            assert!(help.contains(flag), "{sub} --help lacks {flag}");
        }
    }
}
