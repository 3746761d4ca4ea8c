use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dataset::{parse_label, Dataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingFormat {
    /// `f0,...,f{D-1},label` with a header row.
    Csv,
    /// One `{"embedding": [...], "label": 0|1}` object per line.
    Jsonl,
}

impl FromStr for EmbeddingFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(EmbeddingFormat::Csv),
            "jsonl" => Ok(EmbeddingFormat::Jsonl),
            other => Err(Error::InvalidParameter(format!("unknown embedding format {other:?}"))),
        }
    }
}

impl EmbeddingFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("json") => EmbeddingFormat::Jsonl,
            _ => EmbeddingFormat::Csv,
        }
    }
}

#[derive(Deserialize)]
struct EmbeddingRecord {
    #[serde(alias = "features", alias = "vector")]
    embedding: Vec<f64>,
    label: serde_json::Value,
}

/// Load precomputed dense vectors with binary labels.
pub fn load_embeddings(path: impl AsRef<Path>, format: EmbeddingFormat) -> Result<Dataset> {
    let path = path.as_ref();
    match format {
        EmbeddingFormat::Csv => Dataset::read_csv(path),
        EmbeddingFormat::Jsonl => load_jsonl(path),
    }
}

fn load_jsonl(path: &Path) -> Result<Dataset> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut d = None;
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        // serde_json rejects NaN literals on its own; the message still
        // carries our line number.
        let record: EmbeddingRecord = serde_json::from_str(&line)
            .map_err(|e| Error::parse(path, line_no, e.to_string()))?;
        let width = *d.get_or_insert(record.embedding.len());
        if width == 0 {
            return Err(Error::parse(path, line_no, "empty embedding"));
        }
        if record.embedding.len() != width {
            return Err(Error::parse(
                path,
                line_no,
                format!("embedding has {} values, expected {width}", record.embedding.len()),
            ));
        }
        if record.embedding.iter().any(|v| !v.is_finite()) {
            return Err(Error::parse(path, line_no, "non-finite value"));
        }
        let label = match &record.label {
            serde_json::Value::String(s) => parse_label(s),
            other => parse_label(&other.to_string()),
        }
        .map_err(|m| Error::parse(path, line_no, m))?;
        values.extend(record.embedding);
        labels.push(label);
    }
    let d = d.unwrap_or(0);
    let features = DMatrix::from_row_slice(labels.len(), d, &values);
    Dataset::new(features, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn jsonl_loads() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "e.jsonl",
            "{\"embedding\":[0.5,1.0],\"label\":0}\n\n{\"features\":[2.0,-1.0],\"label\":1}\n",
        );
        let ds = load_embeddings(&p, EmbeddingFormat::from_path(&p)).unwrap();
        assert_eq!(ds.n(), 2);
        assert_eq!(ds.row_vec(1), vec![2.0, -1.0]);
        assert_eq!(ds.labels(), &[0, 1]);
    }

    #[test]
    fn jsonl_errors_carry_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let cases = [
            "{\"embedding\":[1.0],\"label\":0}\n{\"embedding\":[1.0,2.0],\"label\":1}\n",
            "{\"embedding\":[1.0],\"label\":1}\n{\"embedding\":[2.0],\"label\":2}\n",
            "{\"embedding\":[1.0],\"label\":1}\n{\"embedding\":[NaN],\"label\":0}\n",
        ];
        for body in cases {
            let p = write(&dir, "bad.jsonl", body);
            match load_embeddings(&p, EmbeddingFormat::Jsonl) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, 2, "{body}"),
                other => panic!("{body}: {other:?}"),
            }
        }
    }

    #[test]
    fn csv_labels_must_be_binary() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "e.csv", "f0,label\n0.1,1\n0.2,2\n");
        let err = load_embeddings(&p, EmbeddingFormat::Csv).unwrap_err();
        assert!(err.to_string().contains("not binary"), "{err}");
    }
}
