//! Group-level MMD shrinks across INLP iterations even though the projected
//! data reveals the labels through its neighbourhood structure.

use erasure_audit::prelude::*;
use erasure_audit::removal::{inlp, InlpConfig};
use erasure_audit::rng::Seed;

fn main() -> erasure_audit::Result<()> {
    let docs = synthetic_corpus(&CorpusSpec::new(200, Seed(4)))?;
    let model = fit_tfidf(&docs, 1024)?;
    let ds = transform_tfidf(&model, &docs)?.dataset;
    let removal = inlp(&ds, &InlpConfig::logistic(10).with_history(), Seed(4))?;

    let first = mmd_squared(&ds, Bandwidth::Auto)?;
    println!("iteration  0: mmd^2 {:+.5} (sigma {:.4}), opposite-label nn {:.3}", first.value, first.bandwidth, opposite_label_nn_proportion(&ds));
    for (k, snap) in removal.snapshots.iter().flatten().enumerate() {
        let est = mmd_squared(snap, Bandwidth::Auto)?;
        println!(
            "iteration {:2}: mmd^2 {:+.5} (sigma {:.4}), opposite-label nn {:.3}",
            k + 1,
            est.value,
            est.bandwidth,
            opposite_label_nn_proportion(snap)
        );
    }
    Ok(())
}
