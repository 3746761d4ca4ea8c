//! Projection-based concept removal and the diagnostics that show what it
//! leaves behind.
//!
//! Mean projection and iterative nullspace projection (INLP) make a concept
//! unpredictable for a *model* trained on the transformed data, but applied
//! to a whole dataset they arrange the rows so that each instance sits near
//! instances of the opposite label. The diagnostics here make that visible:
//!
//! - cross-validated accuracy drops far *below* chance,
//! - leave-one-out nearest-centroid classification after mean projection
//!   never gets a single instance right,
//! - nearest neighbours mostly carry the opposite label,
//! - anti-clustering recovers the removed labelling,
//! - while the MMD between the two groups keeps shrinking.
//!
//! ```no_run
//! use erasure_audit::prelude::*;
//!
//! let ds = generate_gaussian(&SyntheticSpec::new(128, 1024, Seed(7)))?;
//! let removed = inlp(&ds, &InlpConfig::logistic(10), Seed(7))?;
//! let acc = cross_val_accuracy(
//!     &l2_normalize_rows(&removed.output),
//!     32,
//!     &RegularizationConfig::default(),
//!     Seed(7),
//! )?;
//! println!("32-fold accuracy after INLP: {acc:.3}");
//! # Ok::<(), erasure_audit::Error>(())
//! ```

pub mod anticluster;
pub mod classifiers;
pub mod cli;
pub mod dataset;
pub mod datagen;
pub mod diagnostics;
mod error;
pub mod geometry;
pub mod projection;
pub mod removal;
pub mod rng;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::anticluster::{
        anti_kmeans_pass, cluster_purity, diversity_objective, exchange_search, recover_labels,
        AnticlusterConfig, ExchangeOutcome, Partition,
    };
    pub use crate::classifiers::{
        fit_logistic, fit_nearest_centroid, LinearModel, ModelKind, RegularizationConfig,
    };
    pub use crate::dataset::{class_centroids, l2_normalize_rows, Dataset};
    pub use crate::datagen::{
        fit_tfidf, generate_gaussian, load_embeddings, synthetic_corpus, transform_tfidf,
        CorpusSpec, Document, EmbeddingFormat, SyntheticSpec,
    };
    pub use crate::diagnostics::{
        cross_val_accuracy, loo_nearest_centroid_audit, mmd_squared, opposite_label_nn_proportion,
        probability_distribution, shuffle_labels, Bandwidth,
    };
    pub use crate::projection::{apply_projection, Projection};
    pub use crate::removal::{inlp, mean_projection, InlpConfig, RemovalResult};
    pub use crate::rng::Seed;
    pub use crate::{Error, Result};
}
