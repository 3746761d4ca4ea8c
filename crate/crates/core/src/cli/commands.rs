use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::output::Run;
use super::svg;
use super::*;
use crate::anticluster::{recover_labels, AnticlusterConfig, ExchangeOutcome, Objective};
use crate::classifiers::{ModelKind, RegularizationConfig};
use crate::dataset::{l2_normalize_rows, parse_label, Dataset, DatasetMetadata};
use crate::datagen::{
    fit_tfidf, generate_gaussian, load_embeddings, read_corpus, transform_tfidf, EmbeddingFormat,
    SyntheticSpec, VectorizerModel,
};
use crate::diagnostics::{
    cross_val_accuracy, loo_nearest_centroid_audit, median_bandwidth, mmd_squared,
    opposite_label_nn_proportion, probability_distribution, shuffle_labels, Bandwidth,
    DiagnosticsReport,
};
use crate::error::{Error, Result};
use crate::removal::{inlp, mean_projection, InlpConfig, RemovalResult, StopReason};
use crate::rng::Seed;

pub(super) fn run(command: Command, argv: Vec<String>) -> Result<()> {
    match command {
        Command::Generate(a) => generate(a, argv),
        Command::Vectorize(a) => vectorize(a, argv),
        Command::Remove(a) => remove(a, argv),
        Command::Diagnose(a) => diagnose(a, argv),
        Command::Recover(a) => recover(a, argv),
        Command::Report(a) => report(a, argv),
    }
}

fn generate(a: GenerateArgs, argv: Vec<String>) -> Result<()> {
    let spec = SyntheticSpec::new(a.n, a.d, Seed(a.seed));
    let ds = generate_gaussian(&spec)?;
    let mut run = Run::new(&a.out, argv, json!({"n": a.n, "d": a.d}), Some(a.seed))?;
    run.write_dataset("dataset.csv", &ds)?;
    let meta = DatasetMetadata::describe(&ds, Some(Seed(a.seed)), "isotropic gaussian, balanced labels");
    run.write_json("dataset.meta.json", &meta)?;
    run.finish()?;
    Ok(())
}

fn vectorize(a: VectorizeArgs, argv: Vec<String>) -> Result<()> {
    let corpus = read_corpus(&a.corpus)?;
    let mut run = Run::new(&a.out, argv, json!({"d": a.d, "model": a.model}), None)?;
    run.input(&a.corpus);
    let model = match &a.model {
        Some(path) => {
            run.input(path);
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            serde_json::from_str::<VectorizerModel>(&text)?
        }
        None => fit_tfidf(&corpus, a.d)?,
    };
    let out = transform_tfidf(&model, &corpus)?;
    if !out.empty_rows.is_empty() {
        run.notes.push(format!(
            "{} document(s) had no in-vocabulary terms and are zero rows: {:?}",
            out.empty_rows.len(),
            out.empty_rows
        ));
    }
    run.write_dataset("dataset.csv", &out.dataset)?;
    run.write_json("vectorizer.json", &model)?;
    let meta = DatasetMetadata::describe(&out.dataset, None, format!("tf-idf of {}", a.corpus.display()));
    run.write_json("dataset.meta.json", &meta)?;
    run.finish()?;
    Ok(())
}

fn load(path: &Path, format: Option<InputFormat>) -> Result<Dataset> {
    let format = match format {
        Some(InputFormat::Csv) => EmbeddingFormat::Csv,
        Some(InputFormat::Jsonl) => EmbeddingFormat::Jsonl,
        None => EmbeddingFormat::from_path(path),
    };
    load_embeddings(path, format)
}

fn remove(a: RemoveArgs, argv: Vec<String>) -> Result<()> {
    let ds = load(&a.input, a.format)?;
    let classifier = match a.classifier {
        ClassifierArg::Logistic => ModelKind::Logistic,
        ClassifierArg::NearestCentroid => ModelKind::NearestCentroid,
    };
    let cfg = InlpConfig {
        iterations: a.iterations,
        classifier,
        classifier_config: RegularizationConfig {
            c: a.c,
            ..Default::default()
        },
        record_history: a.history,
    };
    let params = json!({
        "method": format!("{:?}", a.method).to_lowercase(),
        "iterations": a.iterations,
        "classifier": classifier,
        "c": a.c,
        "history": a.history,
    });
    let mut run = Run::new(&a.out, argv, params, Some(a.seed))?;
    run.input(&a.input);

    let (result, method, config): (RemovalResult, &str, Option<&InlpConfig>) = match a.method {
        Method::Mp => (mean_projection(&ds)?, "mp", None),
        Method::Inlp => (inlp(&ds, &cfg, Seed(a.seed))?, "inlp", Some(&cfg)),
    };
    match result.stop {
        StopReason::Completed => {}
        StopReason::VanishingDirection { iteration } => run.notes.push(format!(
            "early stop at iteration {iteration}: classifier direction vanished; {} of {} iterations completed",
            result.completed_iterations(),
            result.requested_iterations
        )),
        StopReason::DimensionExhausted { dimension } => run.notes.push(format!(
            "early stop: {} iterations requested but the feature space has only {dimension} dimensions",
            result.requested_iterations
        )),
    }

    run.write_dataset("projected.csv", &result.output)?;
    run.write_json("removal.json", &result.summary(method, config, Some(Seed(a.seed))))?;
    if a.history {
        run.write_dataset("history/iter_000.csv", &ds)?;
        let snapshots = match &result.snapshots {
            Some(s) => s.clone(),
            // mean projection is a single step
            None => vec![result.output.clone()],
        };
        for (k, snap) in snapshots.iter().enumerate() {
            run.write_dataset(&format!("history/iter_{:03}.csv", k + 1), snap)?;
        }
    }
    run.finish()?;
    Ok(())
}

/// Datasets to diagnose with their iteration index.
fn diagnose_inputs(path: &Path) -> Result<Vec<(usize, PathBuf)>> {
    if !path.is_dir() {
        return Ok(vec![(0, path.to_path_buf())]);
    }
    let mut found = Vec::new();
    let entries = std::fs::read_dir(path).map_err(|e| Error::io(path, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(path, e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if let Some(k) = name
            .strip_prefix("iter_")
            .and_then(|s| s.strip_suffix(".csv"))
            .and_then(|s| s.parse::<usize>().ok())
        {
            found.push((k, entry.path()));
        }
    }
    if found.is_empty() {
        return Err(Error::InvalidDataset(format!(
            "{}: no iter_NNN.csv files",
            path.display()
        )));
    }
    found.sort();
    Ok(found)
}

fn diagnose(a: DiagnoseArgs, argv: Vec<String>) -> Result<()> {
    let inputs = diagnose_inputs(&a.input)?;
    let reg = RegularizationConfig {
        c: a.c,
        ..Default::default()
    };
    let fixed_bandwidth = match a.bandwidth.as_str() {
        "auto" | "initial" => None,
        s => Some(s.parse::<f64>().map_err(|_| {
            Error::InvalidParameter(format!("bandwidth must be auto, initial or a number, got {s:?}"))
        })?),
    };
    let normalize = matches!(a.metric, Metric::Cv | Metric::Probs) && !a.no_normalize;
    let config = json!({
        "metric": a.metric.name(),
        "k": a.k,
        "c": a.c,
        "normalize": normalize,
        "shuffle_labels": a.shuffle_labels,
        "bandwidth": a.bandwidth,
        "generator": crate::rng::GENERATOR,
    });
    let mut run = Run::new(&a.out, argv, config.clone(), Some(a.seed))?;
    let mut report = DiagnosticsReport::new(a.metric.name(), config, Some(Seed(a.seed)));
    let mut initial_bandwidth = None;
    let mut scored = None;

    for (iteration, path) in &inputs {
        run.input(path);
        let mut ds = load(path, None)?;
        if a.shuffle_labels {
            ds = shuffle_labels(&ds, Seed(a.seed).child(0));
        }
        if normalize {
            ds = l2_normalize_rows(&ds);
        }
        scored = Some(ds.n());
        let value = match a.metric {
            Metric::Cv => cross_val_accuracy(&ds, a.k, &reg, Seed(a.seed))?,
            Metric::Probs => {
                let dist = probability_distribution(&ds, a.k, &reg, Seed(a.seed))?;
                report.histograms.push((*iteration, dist.histogram));
                dist.mean_correct_class_probability
            }
            Metric::LooNc => loo_nearest_centroid_audit(&ds)?.accuracy,
            Metric::Nn => opposite_label_nn_proportion(&ds),
            Metric::Mmd => {
                let bandwidth = match (fixed_bandwidth, a.bandwidth.as_str()) {
                    (Some(s), _) => Bandwidth::Fixed(s),
                    (None, "auto") => Bandwidth::Auto,
                    _ => {
                        let s = match initial_bandwidth {
                            Some(s) => s,
                            None => *initial_bandwidth.insert(median_bandwidth(&ds)?),
                        };
                        Bandwidth::Fixed(s)
                    }
                };
                let est = mmd_squared(&ds, bandwidth)?;
                report
                    .notes
                    .push(format!("iteration {iteration}: bandwidth {}", est.bandwidth));
                est.value
            }
        };
        report.push(*iteration, value);
    }
    report.validate(scored)?;

    let name = a.metric.name();
    run.write_json(&format!("{name}.report.json"), &report)?;
    run.write_bytes(&format!("{name}.csv"), report.series_csv().as_bytes())?;
    match a.metric {
        Metric::Cv => {
            run.write_bytes("cv.svg", svg::line_chart("cross-validated accuracy", &report.values).as_bytes())?;
        }
        Metric::Probs => {
            for (iteration, h) in &report.histograms {
                run.write_bytes(&format!("probs_hist_iter_{iteration:03}.csv"), h.to_csv().as_bytes())?;
            }
            if let Some((iteration, h)) = report.histograms.last() {
                let title = format!("predicted probabilities, iteration {iteration}");
                run.write_bytes("probs.svg", svg::histogram_chart(&title, h).as_bytes())?;
            }
        }
        _ => {}
    }
    run.finish()?;
    Ok(())
}

fn read_reference_labels(path: &Path) -> Result<Vec<u8>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    if header.trim() != "label" {
        return Ok(Dataset::read_csv(path)?.labels().to_vec());
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_label(l).map_err(|m| Error::parse(path, i + 2, m)))
        .collect()
}

/// Contents of `recovery.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecoveryReport {
    pub objective: String,
    pub k: usize,
    pub winning_restart: usize,
    pub best_objective: f64,
    pub restart_objectives: Vec<f64>,
    pub restart_exchanges: Vec<usize>,
    pub exchange_rule: String,
    pub purity: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn recover(a: RecoverArgs, argv: Vec<String>) -> Result<()> {
    let ds = load(&a.input, None)?;
    let cfg = AnticlusterConfig {
        k: a.k,
        restarts: a.restarts,
        objective: Objective::Diversity,
        max_passes: a.max_passes,
    };
    let mut run = Run::new(&a.out, argv, serde_json::to_value(cfg)?, Some(a.seed))?;
    run.input(&a.input);
    let outcome: ExchangeOutcome = recover_labels(&ds, &cfg, Seed(a.seed))?;

    let mut notes = Vec::new();
    let reference = match (&a.labels, a.use_input_labels) {
        (Some(path), _) => {
            run.input(path);
            Some(read_reference_labels(path)?)
        }
        (None, true) => Some(ds.labels().to_vec()),
        (None, false) => {
            notes.push("no reference labels supplied; purity omitted".to_string());
            None
        }
    };
    let purity = reference.map(|labels| outcome.purity(&labels)).transpose()?;

    run.write_bytes("partition.csv", outcome.partition.to_csv().as_bytes())?;
    let report = RecoveryReport {
        objective: "diversity".into(),
        k: a.k,
        winning_restart: outcome.winning_restart,
        best_objective: outcome.objective,
        restart_objectives: outcome.restarts.iter().map(|t| t.final_objective).collect(),
        restart_exchanges: outcome.restarts.iter().map(|t| t.exchanges).collect(),
        exchange_rule: "best-improvement over all cross-group pairs".into(),
        purity,
        notes: notes.clone(),
    };
    run.write_json("recovery.json", &report)?;
    run.notes.extend(notes);
    run.finish()?;
    Ok(())
}

fn collect_reports(dir: &Path, found: &mut Vec<PathBuf>) -> Result<()> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|err| Error::io(dir, err)))
        .collect::<Result<_>>()?;
    entries.sort();
    for path in entries {
        if path.is_dir() {
            collect_reports(&path, found)?;
        } else if let Some(name) = path.file_name().and_then(|n| n.to_str()) {
            if name.ends_with(".report.json") || name == "recovery.json" {
                found.push(path);
            }
        }
    }
    Ok(())
}

fn report(a: ReportArgs, argv: Vec<String>) -> Result<()> {
    let mut files = Vec::new();
    collect_reports(&a.dir, &mut files)?;
    let mut run = Run::new(&a.out, argv, json!({"dir": a.dir}), None)?;
    // (source, metric) -> series
    let mut rows: BTreeMap<(String, String), Vec<(usize, f64)>> = BTreeMap::new();
    for path in &files {
        run.input(path);
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let source = path
            .parent()
            .and_then(|p| p.strip_prefix(&a.dir).ok())
            .map(|p| p.display().to_string())
            .unwrap_or_default();
        if path.file_name().is_some_and(|n| n == "recovery.json") {
            let rec: RecoveryReport = serde_json::from_str(&text)?;
            if let Some(p) = rec.purity {
                rows.entry((source.clone(), "purity".into())).or_default().push((0, p));
            }
            rows.entry((source, "diversity".into()))
                .or_default()
                .push((0, rec.best_objective));
        } else {
            let r: DiagnosticsReport = serde_json::from_str(&text)?;
            let series = rows.entry((source, r.metric.clone())).or_default();
            series.extend(r.values.iter().map(|p| (p.iteration, p.value)));
        }
    }
    if rows.is_empty() {
        run.notes.push(format!("no reports found under {}", a.dir.display()));
    }
    let mut csv = String::from("source,metric,iteration,value\n");
    let mut md = String::from("| source | metric | iterations | first | last |\n|---|---|---|---|---|\n");
    for ((source, metric), series) in &rows {
        for (it, v) in series {
            csv.push_str(&format!("{source},{metric},{it},{v}\n"));
        }
        let (first, last) = (series.first().unwrap(), series.last().unwrap());
        md.push_str(&format!(
            "| {source} | {metric} | {}..{} | {:.4} | {:.4} |\n",
            first.0, last.0, first.1, last.1
        ));
    }
    run.write_bytes("summary.csv", csv.as_bytes())?;
    run.write_bytes("summary.md", md.as_bytes())?;
    run.finish()?;
    Ok(())
}
