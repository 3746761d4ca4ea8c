//! Share of instances whose Euclidean nearest neighbour carries the other
//! label, before and after projection.

use erasure_audit::prelude::*;
use erasure_audit::removal::{inlp, mean_projection, InlpConfig};
use erasure_audit::rng::Seed;

fn main() -> erasure_audit::Result<()> {
    for n in [32, 64, 128] {
        let ds = generate_gaussian(&SyntheticSpec::new(n, 1024, Seed(3)))?;
        let mp = mean_projection(&ds)?.output;
        let removal = inlp(&ds, &InlpConfig::logistic(10).with_history(), Seed(3))?;
        let series: Vec<String> = removal
            .snapshots
            .iter()
            .flatten()
            .map(|s| format!("{:.2}", opposite_label_nn_proportion(s)))
            .collect();
        println!(
            "n={n:3}  raw {:.2}  mp {:.2}  inlp 1..10 [{}]",
            opposite_label_nn_proportion(&ds),
            opposite_label_nn_proportion(&mp),
            series.join(" ")
        );
    }
    Ok(())
}
