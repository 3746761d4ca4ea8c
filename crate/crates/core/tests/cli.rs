use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_erasure-audit"));
    cmd.env("SOURCE_DATE_EPOCH", "1700000000").env("ERASURE_AUDIT_THREADS", "2");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: impl AsRef<Path>) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn generate(dir: &Path, n: usize, d: usize, seed: u64) -> PathBuf {
    let out = dir.join(format!("gen_{n}_{d}_{seed}"));
    ok(&["generate", "--n", &n.to_string(), "--d", &d.to_string(), "--seed", &seed.to_string(), "--out", s(&out)]);
    out.join("dataset.csv")
}

#[test]
fn odd_n_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "--n", "7", "--d", "3", "--out", s(&dir.path().join("x"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["generate", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["remove", "--input", s(&dir.path().join("nope.csv")), "--out", s(&dir.path().join("o"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_writes_dataset_meta_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let csv = generate(dir.path(), 8, 3, 1);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 9);
    let manifest = read_json(csv.with_file_name("manifest.json"));
    assert_eq!(manifest["seed"], 1);
    assert_eq!(manifest["timestamp"], "2023-11-14T22:13:20Z");
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
    assert_eq!(read_json(csv.with_file_name("dataset.meta.json"))["n"], 8);
}

#[test]
fn same_arguments_give_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        let csv = generate(dir, 16, 12, 3);
        ok(&["remove", "--input", s(&csv), "--iterations", "3", "--history", "--out", s(&dir.join("rm"))]);
        ok(&["diagnose", "--input", s(&dir.join("rm/history")), "--metric", "cv", "--k", "4", "--out", s(&dir.join("cv"))]);
        ok(&["recover", "--input", s(&dir.join("rm/projected.csv")), "--restarts", "5", "--labels", s(&csv), "--out", s(&dir.join("rec"))]);
    }
    for rel in ["rm/projected.csv", "rm/removal.json", "rm/history/iter_002.csv", "cv/cv.report.json", "cv/cv.csv", "rec/partition.csv", "rec/recovery.json"] {
        let x = std::fs::read(a.path().join(rel)).unwrap();
        let y = std::fs::read(b.path().join(rel)).unwrap();
        assert_eq!(x, y, "{rel} differs");
    }
}

#[test]
fn mean_projection_then_loo_audit_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let csv = generate(dir.path(), 20, 6, 5);
    let rm = dir.path().join("rm");
    ok(&["remove", "--input", s(&csv), "--method", "mp", "--out", s(&rm)]);
    let removal = read_json(rm.join("removal.json"));
    assert_eq!(removal["completed_iterations"], 1);
    let diag = dir.path().join("diag");
    ok(&["diagnose", "--input", s(&rm.join("projected.csv")), "--metric", "loo-nc", "--out", s(&diag)]);
    let report = read_json(diag.join("loo-nc.report.json"));
    assert_eq!(report["values"][0]["value"].as_f64(), Some(0.0));
}

#[test]
fn history_feeds_a_series_and_report_collects_it() {
    let dir = tempfile::tempdir().unwrap();
    let csv = generate(dir.path(), 24, 40, 2);
    let rm = dir.path().join("rm");
    ok(&["remove", "--input", s(&csv), "--iterations", "4", "--history", "--out", s(&rm)]);
    for k in 0..=4 {
        assert!(rm.join(format!("history/iter_{k:03}.csv")).exists());
    }
    let runs = dir.path().join("runs");
    for metric in ["nn", "mmd", "probs"] {
        ok(&["diagnose", "--input", s(&rm.join("history")), "--metric", metric, "--k", "4", "--out", s(&runs.join(metric))]);
    }
    let nn = read_json(runs.join("nn/nn.report.json"));
    assert_eq!(nn["values"].as_array().unwrap().len(), 5);
    assert!(runs.join("probs/probs_hist_iter_004.csv").exists());
    assert!(runs.join("probs/probs.svg").exists());

    let summary = dir.path().join("summary");
    ok(&["report", "--dir", s(&runs), "--out", s(&summary)]);
    let table = std::fs::read_to_string(summary.join("summary.csv")).unwrap();
    assert!(table.starts_with("source,metric,iteration,value\n"));
    assert_eq!(table.lines().filter(|l| l.starts_with("nn,nn,")).count(), 5);
}

#[test]
fn recover_without_labels_omits_purity() {
    let dir = tempfile::tempdir().unwrap();
    let csv = generate(dir.path(), 12, 4, 9);
    let rec = dir.path().join("rec");
    ok(&["recover", "--input", s(&csv), "--restarts", "3", "--out", s(&rec)]);
    let report = read_json(rec.join("recovery.json"));
    assert!(report["purity"].is_null());
    assert_eq!(report["restart_objectives"].as_array().unwrap().len(), 3);
    let partition = std::fs::read_to_string(rec.join("partition.csv")).unwrap();
    assert_eq!(partition.lines().next(), Some("index,group"));
    assert_eq!(partition.lines().count(), 13);

    ok(&["recover", "--input", s(&csv), "--restarts", "3", "--use-input-labels", "--out", s(&rec)]);
    let purity = read_json(rec.join("recovery.json"))["purity"].as_f64().unwrap();
    assert!((0.5..=1.0).contains(&purity));
}

#[test]
fn vectorize_a_corpus_and_flag_empty_documents() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.jsonl");
    std::fs::write(
        &corpus,
        "{\"text\": \"good good film\", \"label\": 1}\n\
         {\"text\": \"bad film\", \"label\": 0}\n\
         {\"text\": \"!!!\", \"label\": 0}\n\
         {\"text\": \"good plot\", \"label\": 1}\n",
    )
    .unwrap();
    let out = dir.path().join("vec");
    ok(&["vectorize", "--corpus", s(&corpus), "--d", "3", "--out", s(&out)]);
    let model = read_json(out.join("vectorizer.json"));
    assert_eq!(model["vocabulary"].as_array().unwrap().len(), 3);
    let manifest = read_json(out.join("manifest.json"));
    assert!(manifest["notes"][0].as_str().unwrap().contains("[2]"));

    // a saved model vectorizes a new corpus the same way
    let again = dir.path().join("vec2");
    ok(&["vectorize", "--corpus", s(&corpus), "--model", s(&out.join("vectorizer.json")), "--out", s(&again)]);
    assert_eq!(
        std::fs::read(out.join("dataset.csv")).unwrap(),
        std::fs::read(again.join("dataset.csv")).unwrap()
    );
}

#[test]
fn jsonl_embeddings_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("emb.jsonl");
    let mut text = String::new();
    for i in 0..8 {
        text.push_str(&format!("{{\"embedding\": [{}, {}, 1.0], \"label\": {}}}\n", i as f64 * 0.5, (i * i) as f64 * 0.1, i % 2));
    }
    std::fs::write(&input, text).unwrap();
    ok(&["remove", "--input", s(&input), "--method", "inlp", "--classifier", "nearest-centroid", "--iterations", "1", "--out", s(&dir.path().join("rm"))]);
}

#[test]
fn bad_bandwidth_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = generate(dir.path(), 8, 2, 0);
    let out = run(&["diagnose", "--input", s(&csv), "--metric", "mmd", "--bandwidth", "wide", "--out", s(&dir.path().join("d"))]);
    assert_eq!(out.status.code(), Some(1));
}
