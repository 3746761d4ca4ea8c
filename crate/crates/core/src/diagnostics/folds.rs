use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Seed;

/// Assignment of N instances to k cross-validation folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    pub assignment: Vec<usize>,
}

impl FoldPlan {
    /// Stratified folds: each class is shuffled separately, then class 0 and
    /// class 1 are dealt round-robin onto the folds with one shared counter.
    /// Fold sizes differ by at most one and every class is spread as evenly
    /// as its size allows.
    pub fn stratified(labels: &[u8], k: usize, seed: Seed) -> Result<Self> {
        let n = labels.len();
        if k < 2 {
            return Err(Error::InvalidParameter(format!("fold count must be at least 2, got {k}")));
        }
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "fold count {k} exceeds the {n} instances"
            )));
        }
        let mut rng = seed.stream(0);
        let mut assignment = vec![0; n];
        let mut next = 0;
        for class in 0..2u8 {
            let mut members: Vec<usize> = (0..n).filter(|&i| labels[i] == class).collect();
            members.shuffle(&mut rng);
            for i in members {
                assignment[i] = next % k;
                next += 1;
            }
        }
        Ok(FoldPlan { k, assignment })
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] != fold)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment {
            sizes[f] += 1;
        }
        sizes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_balanced_and_nonempty() {
        for (n, k) in [(10, 3), (128, 32), (33, 32), (7, 7)] {
            let labels: Vec<u8> = (0..n).map(|i| (i % 3 == 0) as u8).collect();
            let plan = FoldPlan::stratified(&labels, k, Seed(1)).unwrap();
            let sizes = plan.fold_sizes();
            let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
            assert!(*lo >= 1 && hi - lo <= 1, "n={n} k={k} sizes={sizes:?}");
        }
    }

    #[test]
    fn every_training_split_has_both_classes() {
        let labels: Vec<u8> = (0..128).map(|i| (i % 2) as u8).collect();
        let plan = FoldPlan::stratified(&labels, 32, Seed(3)).unwrap();
        for f in 0..32 {
            let train = plan.train_indices(f);
            assert!(train.iter().any(|&i| labels[i] == 0));
            assert!(train.iter().any(|&i| labels[i] == 1));
            // two of each class per fold
            let test = plan.test_indices(f);
            assert_eq!(test.iter().filter(|&&i| labels[i] == 1).count(), 2);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let labels: Vec<u8> = (0..50).map(|i| (i % 2) as u8).collect();
        let a = FoldPlan::stratified(&labels, 5, Seed(9)).unwrap();
        assert_eq!(a, FoldPlan::stratified(&labels, 5, Seed(9)).unwrap());
        assert_ne!(a, FoldPlan::stratified(&labels, 5, Seed(10)).unwrap());
    }

    #[test]
    fn rejects_bad_k() {
        assert!(FoldPlan::stratified(&[0, 1], 1, Seed(0)).is_err());
        assert!(FoldPlan::stratified(&[0, 1], 3, Seed(0)).is_err());
    }
}
