//! tf-idf weighted bag of words.
//!
//! Weights are raw term counts times the smoothed idf
//! `ln((1 + N_docs) / (1 + df(t))) + 1`, and every row is then scaled to unit
//! Euclidean norm.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::Document;
use crate::dataset::Dataset;
use crate::error::{Error, Result};

pub const DEFAULT_DIMENSION: usize = 1 << 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorizerModel {
    /// Maximum vocabulary size.
    pub d: usize,
    pub n_documents: usize,
    /// Terms ordered by document frequency (descending), then lexicographically.
    pub vocabulary: Vec<String>,
    pub document_frequencies: Vec<usize>,
    pub idf: Vec<f64>,
}

impl VectorizerModel {
    /// Number of feature columns produced by [`transform_tfidf`].
    pub fn width(&self) -> usize {
        self.vocabulary.len()
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.vocabulary
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect()
    }
}

/// Lowercase, then split on runs of non-alphanumeric characters.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

pub fn fit_tfidf(corpus: &[Document], d: usize) -> Result<VectorizerModel> {
    if corpus.is_empty() {
        return Err(Error::InvalidParameter("empty corpus".into()));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("d must be positive".into()));
    }
    let mut df: HashMap<String, usize> = HashMap::new();
    for doc in corpus {
        let mut seen: Vec<String> = tokenize(&doc.text).collect();
        seen.sort_unstable();
        seen.dedup();
        for term in seen {
            *df.entry(term).or_default() += 1;
        }
    }
    if df.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let mut terms: Vec<(String, usize)> = df.into_iter().collect();
    terms.sort_by(|(ta, fa), (tb, fb)| fb.cmp(fa).then_with(|| ta.cmp(tb)));
    terms.truncate(d);

    let n_docs = corpus.len() as f64;
    let idf = terms
        .iter()
        .map(|(_, f)| ((1.0 + n_docs) / (1.0 + *f as f64)).ln() + 1.0)
        .collect();
    let (vocabulary, document_frequencies) = terms.into_iter().unzip();
    Ok(VectorizerModel {
        d,
        n_documents: corpus.len(),
        vocabulary,
        document_frequencies,
        idf,
    })
}

#[derive(Debug, Clone)]
pub struct TfidfOutput {
    pub dataset: Dataset,
    /// Rows whose documents had no in-vocabulary terms; they are zero.
    pub empty_rows: Vec<usize>,
}

pub fn transform_tfidf(model: &VectorizerModel, corpus: &[Document]) -> Result<TfidfOutput> {
    let index = model.index();
    let width = model.width();
    let mut features = DMatrix::zeros(corpus.len(), width);
    let mut empty_rows = Vec::new();
    for (i, doc) in corpus.iter().enumerate() {
        let mut row = vec![0.0; width];
        for term in tokenize(&doc.text) {
            if let Some(&j) = index.get(term.as_str()) {
                row[j] += 1.0;
            }
        }
        for (v, idf) in row.iter_mut().zip(&model.idf) {
            *v *= idf;
        }
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            empty_rows.push(i);
            continue;
        }
        for (j, v) in row.into_iter().enumerate() {
            features[(i, j)] = v / norm;
        }
    }
    let labels = corpus.iter().map(|doc| doc.label).collect();
    Ok(TfidfOutput {
        dataset: Dataset::new(features, labels)?,
        empty_rows,
    })
}
