//! Feature matrix paired with binary labels.

use std::io::Write;
use std::path::Path;

use nalgebra::{DMatrix, DVector, RowDVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Seed;

/// N instances by D features, each instance labelled 0 or 1.
///
/// Construction validates the shape, label binarity and finiteness of every
/// entry; a `Dataset` that exists satisfies those invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: DMatrix<f64>,
    labels: Vec<u8>,
}

impl Dataset {
    pub fn new(features: DMatrix<f64>, labels: Vec<u8>) -> Result<Self> {
        let (n, d) = features.shape();
        if n < 2 {
            return Err(Error::InvalidDataset(format!("need at least 2 instances, got {n}")));
        }
        if d < 1 {
            return Err(Error::InvalidDataset("need at least 1 feature".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidDataset(format!(
                "{} labels for {n} instances",
                labels.len()
            )));
        }
        if let Some(i) = labels.iter().position(|&y| y > 1) {
            return Err(Error::InvalidDataset(format!(
                "label {} at row {i} is not binary",
                labels[i]
            )));
        }
        if let Some(idx) = features.iter().position(|v| !v.is_finite()) {
            // column-major storage
            let (row, col) = (idx % n, idx / n);
            return Err(Error::InvalidDataset(format!(
                "non-finite value at row {row}, column {col}"
            )));
        }
        Ok(Dataset { features, labels })
    }

    /// Build from row vectors.
    pub fn from_rows(rows: &[Vec<f64>], labels: Vec<u8>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != d) {
            return Err(Error::InvalidDataset(format!(
                "row {i} has {} features, expected {d}",
                r.len()
            )));
        }
        let features = DMatrix::from_fn(rows.len(), d, |i, j| rows[i][j]);
        Dataset::new(features, labels)
    }

    pub fn n(&self) -> usize {
        self.features.nrows()
    }

    pub fn d(&self) -> usize {
        self.features.ncols()
    }

    pub fn features(&self) -> &DMatrix<f64> {
        &self.features
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn row(&self, i: usize) -> RowDVector<f64> {
        self.features.row(i).into_owned()
    }

    pub fn row_vec(&self, i: usize) -> Vec<f64> {
        self.features.row(i).iter().copied().collect()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n()).map(|i| self.row_vec(i)).collect()
    }

    /// `[count of class 0, count of class 1]`.
    pub fn class_counts(&self) -> [usize; 2] {
        let ones = self.labels.iter().filter(|&&y| y == 1).count();
        [self.n() - ones, ones]
    }

    /// Same labels, new features. The shape must match.
    pub fn with_features(&self, features: DMatrix<f64>) -> Result<Self> {
        if features.nrows() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: features.nrows(),
            });
        }
        Dataset::new(features, self.labels.clone())
    }

    /// Same features, new labels.
    pub fn with_labels(&self, labels: Vec<u8>) -> Result<Self> {
        Dataset::new(self.features.clone(), labels)
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let features = self.features.select_rows(indices);
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        Dataset::new(features, labels)
    }

    pub(crate) fn require_both_classes(&self, at_least: usize) -> Result<()> {
        let counts = self.class_counts();
        for class in 0..2u8 {
            let count = counts[class as usize];
            if count < at_least {
                return Err(Error::InsufficientClass {
                    class,
                    count,
                    required: at_least,
                });
            }
        }
        Ok(())
    }

    /// Write `f0,...,f{D-1},label` CSV. Floats use the shortest
    /// representation that parses back to the same value.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut buf = Vec::with_capacity(self.n() * self.d() * 12);
        self.write_csv_to(&mut buf).map_err(|e| Error::io(path, e))?;
        crate::cli::write_atomic(path, &buf)
    }

    pub fn write_csv_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let header: Vec<String> = (0..self.d()).map(|j| format!("f{j}")).collect();
        writeln!(w, "{},label", header.join(","))?;
        for i in 0..self.n() {
            for j in 0..self.d() {
                write!(w, "{},", self.features[(i, j)])?;
            }
            writeln!(w, "{}", self.labels[i])?;
        }
        Ok(())
    }

    /// Read the CSV format written by [`Dataset::write_csv`]. Errors carry the
    /// 1-based line number of the offending record.
    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
        let headers = reader.headers()?.clone();
        let d = match headers.iter().next_back() {
            Some("label") if headers.len() >= 2 => headers.len() - 1,
            _ => {
                return Err(Error::parse(
                    path,
                    1,
                    "header must be f0,...,f{D-1},label",
                ))
            }
        };
        let mut values = Vec::new();
        let mut labels = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                Error::parse(path, line, e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            if record.len() != d + 1 {
                return Err(Error::parse(
                    path,
                    line,
                    format!("expected {} fields, found {}", d + 1, record.len()),
                ));
            }
            for field in record.iter().take(d) {
                let v: f64 = field
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(path, line, format!("not a number: {field:?}")))?;
                if !v.is_finite() {
                    return Err(Error::parse(path, line, format!("non-finite value {field:?}")));
                }
                values.push(v);
            }
            labels.push(parse_label(&record[d]).map_err(|m| Error::parse(path, line, m))?);
        }
        let n = labels.len();
        let features = DMatrix::from_row_slice(n, d, &values);
        Dataset::new(features, labels)
    }
}

pub(crate) fn parse_label(field: &str) -> std::result::Result<u8, String> {
    let field = field.trim();
    let value: f64 = field
        .parse()
        .map_err(|_| format!("label {field:?} is not a number"))?;
    if value == 0.0 {
        Ok(0)
    } else if value == 1.0 {
        Ok(1)
    } else {
        Err(format!("label {field} is not binary (expected 0 or 1)"))
    }
}

/// JSON sidecar written next to every dataset CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMetadata {
    pub n: usize,
    pub d: usize,
    pub seed: Option<Seed>,
    pub provenance: String,
}

impl DatasetMetadata {
    pub fn describe(ds: &Dataset, seed: Option<Seed>, provenance: impl Into<String>) -> Self {
        DatasetMetadata {
            n: ds.n(),
            d: ds.d(),
            seed,
            provenance: provenance.into(),
        }
    }
}

/// Scale every nonzero row to unit Euclidean norm. Zero rows stay zero.
pub fn l2_normalize_rows(ds: &Dataset) -> Dataset {
    let mut features = ds.features.clone();
    for mut row in features.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        }
    }
    Dataset {
        features,
        labels: ds.labels.clone(),
    }
}

/// Arithmetic mean of the rows of each class.
pub fn class_centroids(ds: &Dataset) -> Result<(DVector<f64>, DVector<f64>)> {
    ds.require_both_classes(1)?;
    let mut sums = [DVector::zeros(ds.d()), DVector::zeros(ds.d())];
    for (i, &y) in ds.labels.iter().enumerate() {
        sums[y as usize] += ds.features.row(i).transpose();
    }
    let [n0, n1] = ds.class_counts();
    let [s0, s1] = sums;
    Ok((s0 / n0 as f64, s1 / n1 as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(rows: &[&[f64]], labels: &[u8]) -> Dataset {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        Dataset::from_rows(&rows, labels.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(Dataset::from_rows(&[vec![1.0]], vec![0]).is_err());
        assert!(Dataset::from_rows(&[vec![1.0], vec![2.0]], vec![0]).is_err());
        assert!(Dataset::from_rows(&[vec![1.0], vec![2.0]], vec![0, 2]).is_err());
        assert!(Dataset::from_rows(&[vec![1.0], vec![f64::NAN]], vec![0, 1]).is_err());
        assert!(Dataset::from_rows(&[vec![1.0], vec![f64::INFINITY]], vec![0, 1]).is_err());
        assert!(Dataset::from_rows(&[vec![1.0, 2.0], vec![2.0]], vec![0, 1]).is_err());
    }

    #[test]
    fn normalize_examples() {
        let out = l2_normalize_rows(&ds(&[&[3.0, 4.0], &[0.0, 0.0], &[-2.0, 0.0]], &[0, 1, 0]));
        assert_eq!(out.row_vec(0), vec![0.6, 0.8]);
        assert_eq!(out.row_vec(1), vec![0.0, 0.0]);
        assert_eq!(out.row_vec(2), vec![-1.0, 0.0]);
        assert_eq!(out.labels(), &[0, 1, 0]);
    }

    #[test]
    fn centroid_examples() {
        let (c0, c1) = class_centroids(&ds(&[&[0.0, 0.0], &[2.0, 2.0], &[5.0, 1.0]], &[0, 0, 1])).unwrap();
        assert_eq!(c0.as_slice(), &[1.0, 1.0]);
        assert_eq!(c1.as_slice(), &[5.0, 1.0]);

        let sym = ds(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]], &[0, 0, 1, 1]);
        let (c0, c1) = class_centroids(&sym).unwrap();
        assert_eq!(c0.as_slice(), &[0.0, 0.0]);
        assert_eq!(c1.as_slice(), &[0.0, 0.0]);

        let single = ds(&[&[1.0], &[2.0]], &[0, 0]);
        assert!(matches!(
            class_centroids(&single),
            Err(Error::InsufficientClass { class: 1, .. })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let original = ds(&[&[0.1, -2.5e-7], &[1.0 / 3.0, 12345.678]], &[1, 0]);
        original.write_csv(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("f0,f1,label\n"));
        let back = Dataset::read_csv(&path).unwrap();
        assert_eq!(back, original);
    }

    #[test]
    fn csv_reports_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "f0,label\n1.0,0\nNaN,1\n").unwrap();
        match Dataset::read_csv(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        std::fs::write(&path, "f0,label\n1.0,1\n2.0,2\n").unwrap();
        match Dataset::read_csv(&path) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("binary"));
            }
            other => panic!("{other:?}"),
        }
    }
}
