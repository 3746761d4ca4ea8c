//! Unbiased squared maximum mean discrepancy between the two label groups,
//! under a Gaussian kernel `exp(-|x - y|^2 / (2 sigma^2))`.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::{median_pairwise_distance, pairwise_squared_distances};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bandwidth {
    /// Median distance between distinct rows, pooled over both groups.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MmdEstimate {
    pub value: f64,
    /// The sigma actually used.
    pub bandwidth: f64,
}

/// Median-heuristic bandwidth of `ds`.
pub fn median_bandwidth(ds: &Dataset) -> Result<f64> {
    let sigma = median_pairwise_distance(&pairwise_squared_distances(ds.features()));
    if sigma > 0.0 {
        Ok(sigma)
    } else {
        Err(Error::DegenerateBandwidth)
    }
}

/// Unbiased estimate; can be slightly negative when the groups are alike.
pub fn mmd_squared(ds: &Dataset, bandwidth: Bandwidth) -> Result<MmdEstimate> {
    ds.require_both_classes(2)?;
    let sq = pairwise_squared_distances(ds.features());
    let sigma = match bandwidth {
        Bandwidth::Auto => median_pairwise_distance(&sq),
        Bandwidth::Fixed(s) => s,
    };
    if !(sigma > 0.0 && sigma.is_finite()) {
        return match bandwidth {
            Bandwidth::Auto => Err(Error::DegenerateBandwidth),
            Bandwidth::Fixed(s) => Err(Error::InvalidParameter(format!("bandwidth must be positive, got {s}"))),
        };
    }
    let gamma = 1.0 / (2.0 * sigma * sigma);
    let labels = ds.labels();
    let n = ds.n();
    // within-group sums over ordered pairs i != j, and the cross sum
    let mut within = [0.0f64; 2];
    let mut cross = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let k = (-gamma * sq[(i, j)]).exp();
            if labels[i] == labels[j] {
                within[labels[i] as usize] += 2.0 * k;
            } else {
                cross += k;
            }
        }
    }
    let [m0, m1] = ds.class_counts().map(|c| c as f64);
    let value = within[0] / (m0 * (m0 - 1.0)) + within[1] / (m1 * (m1 - 1.0)) - 2.0 * cross / (m0 * m1);
    Ok(MmdEstimate { value, bandwidth: sigma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::{generate_gaussian, SyntheticSpec};
    use crate::rng::Seed;

    #[test]
    fn identical_groups_are_not_positive() {
        let base = generate_gaussian(&SyntheticSpec::new(20, 3, Seed(1))).unwrap();
        let mut rows = base.rows();
        rows.extend(base.rows());
        let labels = (0..40).map(|i| u8::from(i >= 20)).collect();
        let ds = Dataset::from_rows(&rows, labels).unwrap();
        let est = mmd_squared(&ds, Bandwidth::Auto).unwrap();
        assert!(est.value <= 1e-12, "{}", est.value);
    }

    #[test]
    fn symmetric_under_relabeling() {
        let ds = generate_gaussian(&SyntheticSpec::new(30, 4, Seed(2))).unwrap();
        let flipped = ds.with_labels(ds.labels().iter().map(|y| 1 - y).collect()).unwrap();
        let a = mmd_squared(&ds, Bandwidth::Auto).unwrap();
        let b = mmd_squared(&flipped, Bandwidth::Auto).unwrap();
        assert!((a.value - b.value).abs() < 1e-15);
    }

    #[test]
    fn degenerate_bandwidth() {
        let ds = Dataset::from_rows(&vec![vec![1.0, 1.0]; 4], vec![0, 0, 1, 1]).unwrap();
        assert!(matches!(mmd_squared(&ds, Bandwidth::Auto), Err(Error::DegenerateBandwidth)));
        assert!(mmd_squared(&ds, Bandwidth::Fixed(0.0)).is_err());
        assert!(mmd_squared(&ds, Bandwidth::Fixed(1.0)).is_ok());
    }

    #[test]
    fn needs_two_per_class() {
        let ds = Dataset::from_rows(&[vec![0.0], vec![1.0], vec![2.0]], vec![0, 0, 1]).unwrap();
        assert!(mmd_squared(&ds, Bandwidth::Auto).is_err());
    }
}
