use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::classifiers::margin_toward;
use crate::dataset::Dataset;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LooAudit {
    /// Fraction of instances with a strictly positive margin.
    pub accuracy: f64,
    /// Margin of each held-out instance toward its true class.
    pub margins: Vec<f64>,
}

impl LooAudit {
    pub fn max_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Leave-one-out nearest-centroid classification.
///
/// For each instance the centroids are refit without it (the held-out
/// class centroid becomes `(n_y c_y - x_i) / (n_y - 1)`), and the margin
/// `dist(x, other centroid) - dist(x, own centroid)` is recorded.
pub fn loo_nearest_centroid_audit(ds: &Dataset) -> Result<LooAudit> {
    ds.require_both_classes(2)?;
    let x = ds.features();
    let labels = ds.labels();
    let counts = ds.class_counts();
    let mut sums = [DVector::zeros(ds.d()), DVector::zeros(ds.d())];
    for (i, &y) in labels.iter().enumerate() {
        sums[y as usize] += x.row(i).transpose();
    }

    let margins: Vec<f64> = (0..ds.n())
        .map(|i| {
            let row = x.row(i).transpose();
            let y = labels[i] as usize;
            let own = (&sums[y] - &row) / (counts[y] - 1) as f64;
            let other = &sums[1 - y] / counts[1 - y] as f64;
            let (c0, c1) = if y == 0 { (&own, &other) } else { (&other, &own) };
            let margin = (&row - c0).norm() - (&row - c1).norm();
            margin_toward(margin, labels[i])
        })
        .collect();
    let correct = margins.iter().filter(|&&m| m > 0.0).count();
    Ok(LooAudit {
        accuracy: correct as f64 / ds.n() as f64,
        margins,
    })
}
