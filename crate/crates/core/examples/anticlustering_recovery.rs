//! Recovering the removed labels by anti-clustering the projected data.

use erasure_audit::anticluster::Partition;
use erasure_audit::prelude::*;
use erasure_audit::removal::{inlp, InlpConfig};
use erasure_audit::rng::Seed;

fn main() -> erasure_audit::Result<()> {
    let cfg = AnticlusterConfig::with_restarts(100);
    for n in [32, 64, 128] {
        let ds = generate_gaussian(&SyntheticSpec::new(n, 1024, Seed(11)))?;
        let projected = inlp(&ds, &InlpConfig::logistic(10), Seed(11))?.output;
        let raw = recover_labels(&ds, &cfg, Seed(0))?;
        let rec = recover_labels(&projected, &cfg, Seed(0))?;
        println!(
            "n={n:3}  purity unprojected {:.3}  projected {:.3}  (winning restart {})",
            raw.purity(ds.labels())?,
            rec.purity(ds.labels())?,
            rec.winning_restart
        );
    }

    // the single-sweep heuristic, starting from a random split
    let ds = generate_gaussian(&SyntheticSpec::new(64, 1024, Seed(12)))?;
    let projected = inlp(&ds, &InlpConfig::logistic(10), Seed(12))?.output;
    let mut p = Partition::random_balanced(ds.n(), 2, &mut Seed(5).rng());
    for sweep in 1..=5 {
        p = anti_kmeans_pass(&projected, &p)?;
        println!("anti k-means sweep {sweep}: purity {:.3}", cluster_purity(&p, ds.labels())?);
    }
    Ok(())
}
