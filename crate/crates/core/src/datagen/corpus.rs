//! Labelled text corpora stored as JSON lines, plus a synthetic generator
//! for bag-of-words experiments when no real corpus is at hand.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Zipf};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Seed;

/// One line of a corpus file: `{"text": ..., "label": 0|1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub text: String,
    pub label: u8,
}

impl Document {
    pub fn new(text: impl Into<String>, label: u8) -> Self {
        Document {
            text: text.into(),
            label,
        }
    }
}

pub fn read_corpus(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: Document =
            serde_json::from_str(&line).map_err(|e| Error::parse(path, i + 1, e.to_string()))?;
        if doc.label > 1 {
            return Err(Error::parse(
                path,
                i + 1,
                format!("label {} is not binary (expected 0 or 1)", doc.label),
            ));
        }
        docs.push(doc);
    }
    Ok(docs)
}

pub fn write_corpus(path: impl AsRef<Path>, docs: &[Document]) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    for doc in docs {
        serde_json::to_writer(&mut buf, doc)?;
        buf.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    crate::cli::write_atomic(path, &buf)
}

/// Parameters of a synthetic review-like corpus.
///
/// Background words follow a Zipf law over `vocabulary` types. Each class
/// also owns `marker_words` words of its own; every token is drawn from the
/// document's class markers with probability `signal`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub documents: usize,
    pub vocabulary: usize,
    pub mean_length: usize,
    pub marker_words: usize,
    pub signal: f64,
    pub seed: Seed,
}

impl CorpusSpec {
    pub fn new(documents: usize, seed: Seed) -> Self {
        CorpusSpec {
            documents,
            vocabulary: 5000,
            mean_length: 60,
            marker_words: 30,
            signal: 0.05,
            seed,
        }
    }
}

/// Balanced labels in shuffled order; deterministic per seed.
pub fn synthetic_corpus(spec: &CorpusSpec) -> Result<Vec<Document>> {
    if spec.documents < 2 || spec.vocabulary < 1 || spec.mean_length < 1 {
        return Err(Error::InvalidParameter(
            "corpus needs at least 2 documents, 1 word type and positive length".into(),
        ));
    }
    if !(0.0..=1.0).contains(&spec.signal) {
        return Err(Error::InvalidParameter(format!("signal {} outside [0, 1]", spec.signal)));
    }
    let zipf = Zipf::new(spec.vocabulary as f64, 1.1)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut labels: Vec<u8> = (0..spec.documents).map(|i| u8::from(i >= spec.documents / 2)).collect();
    labels.shuffle(&mut spec.seed.stream(0));

    let mut rng = spec.seed.stream(1);
    let half = spec.mean_length / 2;
    let docs = labels
        .into_iter()
        .map(|label| {
            let len = rng.random_range(half.max(1)..=spec.mean_length + half);
            let words: Vec<String> = (0..len)
                .map(|_| {
                    if spec.marker_words > 0 && rng.random_bool(spec.signal) {
                        let k = rng.random_range(0..spec.marker_words);
                        format!("c{label}m{k}")
                    } else {
                        let rank = zipf.sample(&mut rng) as usize;
                        format!("w{rank}")
                    }
                })
                .collect();
            Document::new(words.join(" "), label)
        })
        .collect();
    Ok(docs)
}
