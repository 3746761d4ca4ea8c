//! Measurements that expose the structure projection leaves behind:
//! below-chance cross-validation, leave-one-out nearest-centroid margins,
//! shifted probability distributions, inverted neighborhoods and the
//! (misleadingly shrinking) MMD between groups.

mod cv;
mod folds;
mod loo;
mod mmd;
mod neighbors;
mod report;

pub use cv::{
    cross_val_accuracy, cross_val_margins, probability_distribution, ProbabilityDistribution,
    ProbabilityHistogram, HISTOGRAM_BINS,
};
pub use folds::FoldPlan;
pub use loo::{loo_nearest_centroid_audit, LooAudit};
pub use mmd::{median_bandwidth, mmd_squared, Bandwidth, MmdEstimate};
pub use neighbors::{nearest_neighbors, opposite_label_nn_proportion};
pub use report::{DiagnosticsReport, SeriesPoint};

use rand::seq::SliceRandom;

use crate::dataset::Dataset;
use crate::rng::Seed;

/// Uniformly permute the labels; features and class counts are unchanged.
pub fn shuffle_labels(ds: &Dataset, seed: Seed) -> Dataset {
    let mut labels = ds.labels().to_vec();
    labels.shuffle(&mut seed.rng());
    ds.with_labels(labels)
        .expect("a permutation of valid labels is valid")
}
