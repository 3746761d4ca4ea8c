//! Concept removal by projection: mean projection and iterative nullspace
//! projection (INLP).

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::classifiers::{fit_logistic, fit_nearest_centroid, ModelKind, RegularizationConfig};
use crate::dataset::{class_centroids, Dataset};
use crate::error::{Error, Result};
use crate::projection::{remove_direction, Projection};
use crate::rng::Seed;

/// Classifier weight norms below this end INLP early.
pub const MIN_DIRECTION_NORM: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InlpConfig {
    pub iterations: usize,
    pub classifier: ModelKind,
    pub classifier_config: RegularizationConfig,
    pub record_history: bool,
}

impl Default for InlpConfig {
    fn default() -> Self {
        InlpConfig {
            iterations: 10,
            classifier: ModelKind::Logistic,
            classifier_config: RegularizationConfig::default(),
            record_history: false,
        }
    }
}

impl InlpConfig {
    pub fn logistic(iterations: usize) -> Self {
        InlpConfig {
            iterations,
            ..Default::default()
        }
    }

    pub fn nearest_centroid(iterations: usize) -> Self {
        InlpConfig {
            iterations,
            classifier: ModelKind::NearestCentroid,
            ..Default::default()
        }
    }

    pub fn with_history(mut self) -> Self {
        self.record_history = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum StopReason {
    Completed,
    /// The classifier direction at `iteration` (1-based) vanished after
    /// orthogonalization against earlier directions.
    VanishingDirection { iteration: usize },
    /// More iterations were requested than the feature space has dimensions.
    DimensionExhausted { dimension: usize },
}

#[derive(Debug, Clone)]
pub struct RemovalResult {
    pub projection: Projection,
    /// The input after the full projection.
    pub output: Dataset,
    /// Dataset after each completed iteration, when history was requested.
    pub snapshots: Option<Vec<Dataset>>,
    /// Norm of each classifier direction after orthogonalization, before it
    /// was normalized.
    pub direction_norms: Vec<f64>,
    pub requested_iterations: usize,
    pub stop: StopReason,
}

impl RemovalResult {
    pub fn completed_iterations(&self) -> usize {
        self.projection.rank_removed()
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        self.projection.directions()
    }

    pub fn summary(&self, method: &str, config: Option<&InlpConfig>, seed: Option<Seed>) -> RemovalSummary {
        RemovalSummary {
            method: method.to_string(),
            config: config.copied(),
            seed,
            dimension: self.projection.dimension(),
            requested_iterations: self.requested_iterations,
            completed_iterations: self.completed_iterations(),
            stop: self.stop,
            direction_norms: self.direction_norms.clone(),
            directions: self.directions().to_vec(),
        }
    }
}

/// Serializable record of a removal run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemovalSummary {
    pub method: String,
    pub config: Option<InlpConfig>,
    pub seed: Option<Seed>,
    pub dimension: usize,
    pub requested_iterations: usize,
    pub completed_iterations: usize,
    pub stop: StopReason,
    pub direction_norms: Vec<f64>,
    pub directions: Vec<Vec<f64>>,
}

/// Remove the direction joining the two class centroids. Afterwards both
/// class centroids coincide.
pub fn mean_projection(ds: &Dataset) -> Result<RemovalResult> {
    let (c0, c1) = class_centroids(ds)?;
    let diff = &c1 - &c0;
    let norm = diff.norm();
    let scale = c0.norm().max(c1.norm()).max(1.0);
    if !(norm > 1e-12 * scale) {
        return Err(Error::DegenerateDirection { norm });
    }
    let mut projection = Projection::identity(ds.d());
    projection
        .push(&diff, 0.0)?
        .expect("nonzero difference survives an empty orthogonalization");
    let mut features = ds.features().clone();
    projection.apply_matrix(&mut features)?;
    Ok(RemovalResult {
        projection,
        output: ds.with_features(features)?,
        snapshots: None,
        direction_norms: vec![norm],
        requested_iterations: 1,
        stop: StopReason::Completed,
    })
}

/// Iterative nullspace projection: repeatedly fit a linear classifier for
/// the labels and project the data onto the orthogonal complement of its
/// weight vector. The classifier bias plays no part in the projection.
///
/// All configured solvers are deterministic; `seed` is accepted so runs are
/// recorded uniformly with the stochastic operations.
pub fn inlp(ds: &Dataset, cfg: &InlpConfig, _seed: Seed) -> Result<RemovalResult> {
    ds.require_both_classes(1)?;
    let d = ds.d();
    let mut projection = Projection::identity(d);
    let mut features = ds.features().clone();
    let mut snapshots = cfg.record_history.then(Vec::new);
    let mut direction_norms = Vec::new();
    let mut stop = StopReason::Completed;

    for iteration in 1..=cfg.iterations {
        if iteration > d {
            stop = StopReason::DimensionExhausted { dimension: d };
            break;
        }
        let current = ds.with_features(features.clone())?;
        let model = match cfg.classifier {
            ModelKind::Logistic => fit_logistic(&current, &cfg.classifier_config)?,
            ModelKind::NearestCentroid => fit_nearest_centroid(&current)?,
        };
        let w = DVector::from_column_slice(&model.weights);
        let residual_norm = projection.orthogonalize(&w)?.norm();
        let Some(u) = projection.push(&w, MIN_DIRECTION_NORM)? else {
            stop = StopReason::VanishingDirection { iteration };
            break;
        };
        direction_norms.push(residual_norm);
        remove_direction(&mut features, &u);
        if let Some(snaps) = snapshots.as_mut() {
            snaps.push(ds.with_features(features.clone())?);
        }
    }

    Ok(RemovalResult {
        projection,
        output: ds.with_features(features)?,
        snapshots,
        direction_norms,
        requested_iterations: cfg.iterations,
        stop,
    })
}
