//! Held-out predicted probabilities for three settings: original labels,
//! INLP-projected features, and shuffled labels.

use erasure_audit::prelude::*;
use erasure_audit::removal::{inlp, InlpConfig};
use erasure_audit::rng::Seed;

fn show(name: &str, ds: &Dataset) -> erasure_audit::Result<()> {
    let dist = probability_distribution(&l2_normalize_rows(ds), 32, &RegularizationConfig::default(), Seed(1))?;
    println!(
        "{name:>11}: accuracy {:.3}, mean probability of the true class {:.3}",
        dist.accuracy, dist.mean_correct_class_probability
    );
    print!("{}", dist.histogram.to_csv());
    Ok(())
}

fn main() -> erasure_audit::Result<()> {
    let ds = generate_gaussian(&SyntheticSpec::new(128, 1024, Seed(1)))?;
    let projected = inlp(&ds, &InlpConfig::logistic(10), Seed(1))?.output;
    show("original", &ds)?;
    show("projected", &projected)?;
    show("independent", &shuffle_labels(&ds, Seed(2)))?;
    Ok(())
}
