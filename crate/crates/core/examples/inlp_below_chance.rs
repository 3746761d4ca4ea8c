//! Cross-validated accuracy on INLP output for data with no signal at all.
//! Chance is 0.5; the projected data scores far below it.

use erasure_audit::prelude::*;
use erasure_audit::removal::{inlp, InlpConfig};
use erasure_audit::rng::Seed;

fn main() -> erasure_audit::Result<()> {
    let ds = generate_gaussian(&SyntheticSpec::new(128, 1024, Seed(0)))?;
    let removal = inlp(&ds, &InlpConfig::logistic(10).with_history(), Seed(0))?;
    let cfg = RegularizationConfig::default();

    let base = cross_val_accuracy(&l2_normalize_rows(&ds), 32, &cfg, Seed(0))?;
    println!("iteration  0: cv accuracy {base:.3}");
    for (k, snap) in removal.snapshots.iter().flatten().enumerate() {
        let acc = cross_val_accuracy(&l2_normalize_rows(snap), 32, &cfg, Seed(0))?;
        println!("iteration {:2}: cv accuracy {acc:.3}", k + 1);
    }
    println!("stop: {:?}", removal.stop);
    Ok(())
}
