//! Mean projection leaves every instance on the wrong side of (or exactly
//! on) the leave-one-out nearest-centroid boundary.

use erasure_audit::prelude::*;
use erasure_audit::removal::mean_projection;
use erasure_audit::rng::Seed;

fn main() -> erasure_audit::Result<()> {
    for (n, d) in [(8, 4), (32, 64), (128, 1024)] {
        let ds = generate_gaussian(&SyntheticSpec::new(n, d, Seed(7)))?;
        let before = loo_nearest_centroid_audit(&ds)?;
        let mp = mean_projection(&ds)?;
        let after = loo_nearest_centroid_audit(&mp.output)?;
        println!(
            "n={n:4} d={d:5}  loo accuracy {:.3} -> {:.3}  (largest margin after: {:.3e})",
            before.accuracy,
            after.accuracy,
            after.max_margin()
        );
    }
    Ok(())
}
