//! Cross-validated logistic regression: pooled accuracy and the
//! distribution of held-out predicted probabilities.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FoldPlan;
use crate::classifiers::{fit_in_row_space, margin_is_correct, sigmoid, RegularizationConfig, RowSpace};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::Seed;

pub const HISTOGRAM_BINS: usize = 20;

/// Held-out decision value `<w, x> + b` for every instance, each from the
/// model trained on the other folds.
pub fn cross_val_margins(ds: &Dataset, plan: &FoldPlan, cfg: &RegularizationConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    if plan.assignment.len() != ds.n() {
        return Err(Error::DimensionMismatch {
            expected: ds.n(),
            actual: plan.assignment.len(),
        });
    }
    // One basis for the whole dataset: it contains every training span, so
    // the per-fold problems stay exact in these coordinates.
    let space = RowSpace::of(ds.features());
    let labels = ds.labels();
    let per_fold: Vec<Result<Vec<(usize, f64)>>> = (0..plan.k)
        .into_par_iter()
        .map(|fold| {
            let train = plan.train_indices(fold);
            for class in 0..2u8 {
                if !train.iter().any(|&i| labels[i] == class) {
                    return Err(Error::SingleClassFold { fold, class: 1 - class });
                }
            }
            let fit = fit_in_row_space(&space, &train, labels, cfg)?;
            Ok(plan
                .test_indices(fold)
                .into_iter()
                .map(|i| (i, space.coords().row(i).transpose().dot(&fit.weights) + fit.bias))
                .collect())
        })
        .collect();

    let mut margins = vec![0.0; ds.n()];
    for fold in per_fold {
        for (i, m) in fold? {
            margins[i] = m;
        }
    }
    Ok(margins)
}

/// Pooled k-fold accuracy of L2-regularized logistic regression. Ties
/// (margin exactly zero) count as errors. Callers wanting the standard
/// pipeline normalize rows first.
pub fn cross_val_accuracy(ds: &Dataset, k: usize, cfg: &RegularizationConfig, seed: Seed) -> Result<f64> {
    let plan = FoldPlan::stratified(ds.labels(), k, seed)?;
    let margins = cross_val_margins(ds, &plan, cfg)?;
    Ok(pooled_accuracy(&margins, ds.labels()))
}

pub(crate) fn pooled_accuracy(margins: &[f64], labels: &[u8]) -> f64 {
    let correct = margins
        .iter()
        .zip(labels)
        .filter(|(m, y)| margin_is_correct(**m, **y))
        .count();
    correct as f64 / labels.len() as f64
}

/// Counts of predicted probabilities on `[0, 1]`, split by true label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityHistogram {
    /// `bins + 1` edges from 0 to 1.
    pub edges: Vec<f64>,
    pub class0: Vec<usize>,
    pub class1: Vec<usize>,
}

impl ProbabilityHistogram {
    pub fn from_probabilities(probabilities: &[f64], labels: &[u8], bins: usize) -> Self {
        let edges = (0..=bins).map(|b| b as f64 / bins as f64).collect();
        let mut class0 = vec![0; bins];
        let mut class1 = vec![0; bins];
        for (&p, &y) in probabilities.iter().zip(labels) {
            let bin = ((p * bins as f64).floor() as usize).min(bins - 1);
            if y == 1 {
                class1[bin] += 1;
            } else {
                class0[bin] += 1;
            }
        }
        ProbabilityHistogram { edges, class0, class1 }
    }

    pub fn total(&self) -> usize {
        self.class0.iter().sum::<usize>() + self.class1.iter().sum::<usize>()
    }

    /// `bin_left,bin_right,count_class0,count_class1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,count_class0,count_class1\n");
        for b in 0..self.class0.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.edges[b],
                self.edges[b + 1],
                self.class0[b],
                self.class1[b]
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityDistribution {
    /// Held-out probability of class 1, per instance.
    pub probabilities: Vec<f64>,
    pub histogram: ProbabilityHistogram,
    /// Mean probability assigned to each instance's true class.
    pub mean_correct_class_probability: f64,
    pub accuracy: f64,
}

impl ProbabilityDistribution {
    pub fn from_probabilities(probabilities: Vec<f64>, labels: &[u8]) -> Self {
        let histogram = ProbabilityHistogram::from_probabilities(&probabilities, labels, HISTOGRAM_BINS);
        let mean_correct_class_probability = probabilities
            .iter()
            .zip(labels)
            .map(|(&p, &y)| if y == 1 { p } else { 1.0 - p })
            .sum::<f64>()
            / labels.len() as f64;
        let accuracy = probabilities
            .iter()
            .zip(labels)
            .filter(|(&p, &y)| if y == 1 { p > 0.5 } else { p < 0.5 })
            .count() as f64
            / labels.len() as f64;
        ProbabilityDistribution {
            probabilities,
            histogram,
            mean_correct_class_probability,
            accuracy,
        }
    }
}

/// Cross-validated predicted probabilities, binned per true class.
pub fn probability_distribution(
    ds: &Dataset,
    k: usize,
    cfg: &RegularizationConfig,
    seed: Seed,
) -> Result<ProbabilityDistribution> {
    let plan = FoldPlan::stratified(ds.labels(), k, seed)?;
    let margins = cross_val_margins(ds, &plan, cfg)?;
    let probabilities = margins.iter().copied().map(sigmoid).collect();
    let mut dist = ProbabilityDistribution::from_probabilities(probabilities, ds.labels());
    // sigmoid rounds margins below ~1e-16 to exactly 0.5; score by margin
    dist.accuracy = pooled_accuracy(&margins, ds.labels());
    Ok(dist)
}
