//! Anti-clustering: split the instances into balanced groups whose members
//! are as dissimilar as possible, then compare the groups with a reference
//! labelling.
//!
//! The objective is the diversity criterion, the sum of all within-group
//! pairwise Euclidean distances. [`exchange_search`] maximizes it by
//! best-improvement pairwise exchanges from many random starts;
//! [`anti_kmeans_pass`] is the cheaper centroid heuristic.

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::pairwise_squared_distances;
use crate::rng::Seed;

/// Above this many instances distances are recomputed instead of cached.
pub const DISTANCE_CACHE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    k: usize,
    assignment: Vec<usize>,
}

impl Partition {
    /// Groups must all be nonempty with sizes differing by at most one.
    pub fn new(assignment: Vec<usize>, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter("group count must be positive".into()));
        }
        if let Some(&g) = assignment.iter().find(|&&g| g >= k) {
            return Err(Error::InvalidParameter(format!("group {g} out of range for k = {k}")));
        }
        let p = Partition { k, assignment };
        let sizes = p.group_sizes();
        let (lo, hi) = (*sizes.iter().min().unwrap(), *sizes.iter().max().unwrap());
        if lo == 0 || hi - lo > 1 {
            return Err(Error::InvalidParameter(format!(
                "partition is not balanced: group sizes {sizes:?}"
            )));
        }
        Ok(p)
    }

    /// Uniformly random balanced partition.
    pub fn random_balanced<R: rand::Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        let mut assignment: Vec<usize> = (0..n).map(|i| i % k).collect();
        assignment.shuffle(rng);
        Partition { k, assignment }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn group(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &g in &self.assignment {
            sizes[g] += 1;
        }
        sizes
    }

    /// `index,group`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,group\n");
        for (i, g) in self.assignment.iter().enumerate() {
            out.push_str(&format!("{i},{g}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Diversity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnticlusterConfig {
    pub k: usize,
    pub restarts: usize,
    pub objective: Objective,
    /// Cap on accepted exchanges per restart.
    pub max_passes: usize,
}

impl Default for AnticlusterConfig {
    fn default() -> Self {
        AnticlusterConfig {
            k: 2,
            restarts: 100,
            objective: Objective::Diversity,
            max_passes: 10_000,
        }
    }
}

impl AnticlusterConfig {
    pub fn with_restarts(restarts: usize) -> Self {
        AnticlusterConfig {
            restarts,
            ..Default::default()
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 groups, got {}", self.k)));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidParameter("need at least one restart".into()));
        }
        if self.max_passes < 1 {
            return Err(Error::InvalidParameter("max_passes must be positive".into()));
        }
        if n < self.k {
            return Err(Error::InvalidParameter(format!(
                "{n} instances cannot fill {} groups",
                self.k
            )));
        }
        Ok(())
    }
}

/// Euclidean distances, cached for moderate N.
enum Distances {
    Cached(DMatrix<f64>),
    OnTheFly(DMatrix<f64>),
}

impl Distances {
    fn of(ds: &Dataset) -> Self {
        if ds.n() <= DISTANCE_CACHE_LIMIT {
            Distances::Cached(pairwise_squared_distances(ds.features()).map(f64::sqrt))
        } else {
            Distances::OnTheFly(ds.features().transpose())
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            Distances::Cached(m) => m[(i, j)],
            Distances::OnTheFly(xt) => (xt.column(i) - xt.column(j)).norm(),
        }
    }
}

fn objective_with(dist: &Distances, p: &Partition) -> f64 {
    let n = p.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            if p.assignment[i] == p.assignment[j] {
                total += dist.get(i, j);
            }
        }
    }
    total
}

/// Sum over groups of all within-group pairwise Euclidean distances.
pub fn diversity_objective(ds: &Dataset, p: &Partition) -> Result<f64> {
    check_len(ds.n(), p)?;
    Ok(objective_with(&Distances::of(ds), p))
}

fn check_len(n: usize, p: &Partition) -> Result<()> {
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: p.len(),
        });
    }
    Ok(())
}

/// One Lloyd-style sweep that moves instances toward their farthest group.
///
/// Instances are visited in index order. An instance whose farthest group
/// centroid is not its own group is swapped with the member of that group
/// lying farthest from the instance's current centroid; centroids are
/// updated after every swap. Swaps keep group sizes, so balance holds.
/// Distance ties prefer the current group, then the lowest index.
pub fn anti_kmeans_pass(ds: &Dataset, p: &Partition) -> Result<Partition> {
    check_len(ds.n(), p)?;
    let x = ds.features();
    let k = p.k;
    let mut assignment = p.assignment.clone();
    let counts = p.group_sizes();
    let mut sums = vec![DVector::zeros(ds.d()); k];
    for (i, &g) in assignment.iter().enumerate() {
        sums[g] += x.row(i).transpose();
    }
    let centroid = |sums: &[DVector<f64>], g: usize| &sums[g] / counts[g] as f64;

    for i in 0..ds.n() {
        let own = assignment[i];
        let xi = x.row(i).transpose();
        let mut target = own;
        let mut best = (&xi - centroid(&sums, own)).norm();
        for g in (0..k).filter(|&g| g != own) {
            let d = (&xi - centroid(&sums, g)).norm();
            if d > best {
                best = d;
                target = g;
            }
        }
        if target == own {
            continue;
        }
        let own_centroid = centroid(&sums, own);
        let mut partner = None;
        let mut partner_d = f64::NEG_INFINITY;
        for j in (0..ds.n()).filter(|&j| assignment[j] == target) {
            let d = (x.row(j).transpose() - &own_centroid).norm();
            if d > partner_d {
                partner_d = d;
                partner = Some(j);
            }
        }
        let j = partner.expect("balanced groups are nonempty");
        let xj = x.row(j).transpose();
        sums[own] += &xj - &xi;
        sums[target] += &xi - &xj;
        assignment[i] = target;
        assignment[j] = own;
    }
    Ok(Partition { k, assignment })
}

/// Per-restart record of an exchange search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartTrace {
    pub initial_objective: f64,
    pub final_objective: f64,
    pub exchanges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExchangeOutcome {
    pub partition: Partition,
    pub objective: f64,
    /// Lowest-indexed restart reaching the best objective.
    pub winning_restart: usize,
    pub restarts: Vec<RestartTrace>,
}

impl ExchangeOutcome {
    pub fn purity(&self, labels: &[u8]) -> Result<f64> {
        cluster_purity(&self.partition, labels)
    }
}

fn local_search(dist: &Distances, mut p: Partition, max_passes: usize) -> (Partition, RestartTrace) {
    let n = p.len();
    let k = p.k;
    // affinity[i * k + g]: summed distance from i to the members of g, i excluded
    let mut affinity = vec![0.0; n * k];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                affinity[i * k + p.assignment[j]] += dist.get(i, j);
            }
        }
    }
    let initial_objective = objective_with(dist, &p);
    let mut objective = initial_objective;
    let mut exchanges = 0;

    while exchanges < max_passes {
        let mut best = (0.0, usize::MAX, usize::MAX);
        for i in 0..n {
            let gi = p.assignment[i];
            for j in (i + 1)..n {
                let gj = p.assignment[j];
                if gi == gj {
                    continue;
                }
                let dij = dist.get(i, j);
                let delta = (affinity[i * k + gj] - dij) + (affinity[j * k + gi] - dij)
                    - affinity[i * k + gi]
                    - affinity[j * k + gj];
                if delta > best.0 {
                    best = (delta, i, j);
                }
            }
        }
        let (delta, i, j) = best;
        if i == usize::MAX || delta <= 1e-12 * objective.abs().max(1.0) {
            break;
        }
        let (gi, gj) = (p.assignment[i], p.assignment[j]);
        for l in 0..n {
            let change = dist.get(l, j) - dist.get(l, i);
            affinity[l * k + gi] += change;
            affinity[l * k + gj] -= change;
        }
        p.assignment[i] = gj;
        p.assignment[j] = gi;
        objective += delta;
        exchanges += 1;
    }
    let final_objective = objective_with(dist, &p);
    (
        p,
        RestartTrace {
            initial_objective,
            final_objective,
            exchanges,
        },
    )
}

/// Multi-start pairwise exchange search maximizing the diversity criterion.
///
/// Each restart draws a random balanced partition from its own stream of
/// `seed`, then repeatedly applies the single cross-group swap with the
/// largest objective gain until no swap gains or `max_passes` swaps were
/// made. The best restart wins, ties going to the lowest restart index.
pub fn exchange_search(ds: &Dataset, cfg: &AnticlusterConfig, seed: Seed) -> Result<ExchangeOutcome> {
    cfg.validate(ds.n())?;
    let dist = Distances::of(ds);
    let runs: Vec<(Partition, RestartTrace)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let init = Partition::random_balanced(ds.n(), cfg.k, &mut seed.stream(r as u64));
            local_search(&dist, init, cfg.max_passes)
        })
        .collect();

    let mut winning_restart = 0;
    for (r, (_, trace)) in runs.iter().enumerate() {
        if trace.final_objective > runs[winning_restart].1.final_objective {
            winning_restart = r;
        }
    }
    let objective = runs[winning_restart].1.final_objective;
    let partition = runs[winning_restart].0.clone();
    Ok(ExchangeOutcome {
        partition,
        objective,
        winning_restart,
        restarts: runs.into_iter().map(|(_, t)| t).collect(),
    })
}

/// Anti-cluster `ds`; compare the outcome with any labelling through
/// [`ExchangeOutcome::purity`].
pub fn recover_labels(ds: &Dataset, cfg: &AnticlusterConfig, seed: Seed) -> Result<ExchangeOutcome> {
    exchange_search(ds, cfg, seed)
}

/// Fraction of instances carrying their group's majority label. Invariant to
/// renumbering groups and to swapping label values.
pub fn cluster_purity(p: &Partition, labels: &[u8]) -> Result<f64> {
    check_len(labels.len(), p)?;
    let mut counts = vec![[0usize; 2]; p.k];
    for (&g, &y) in p.assignment.iter().zip(labels) {
        counts[g][y.min(1) as usize] += 1;
    }
    let majority: usize = counts.iter().map(|c| c[0].max(c[1])).sum();
    Ok(majority as f64 / labels.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Dataset {
        let rows = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        Dataset::from_rows(&rows, vec![0, 1, 0, 1]).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![0, 1, 0, 1], 2).is_ok());
        assert!(Partition::new(vec![0, 1, 0], 2).is_ok());
        assert!(Partition::new(vec![0, 0, 0, 1], 2).is_err());
        assert!(Partition::new(vec![0, 0], 2).is_err());
        assert!(Partition::new(vec![0, 2], 2).is_err());
    }

    #[test]
    fn objective_examples() {
        let pair = Dataset::from_rows(&[vec![0.0, 0.0], vec![3.0, 4.0]], vec![0, 1]).unwrap();
        assert_eq!(diversity_objective(&pair, &Partition::new(vec![0, 1], 2).unwrap()).unwrap(), 0.0);
        assert_eq!(diversity_objective(&pair, &Partition::new(vec![0, 0], 1).unwrap()).unwrap(), 5.0);

        let sq = square();
        let diagonal = diversity_objective(&sq, &Partition::new(vec![0, 1, 0, 1], 2).unwrap()).unwrap();
        let sides = diversity_objective(&sq, &Partition::new(vec![0, 0, 1, 1], 2).unwrap()).unwrap();
        let other_sides = diversity_objective(&sq, &Partition::new(vec![0, 1, 1, 0], 2).unwrap()).unwrap();
        assert!((diagonal - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sides, 2.0);
        assert_eq!(other_sides, 2.0);
    }

    #[test]
    fn exchange_finds_square_diagonals() {
        for seed in 0..10 {
            let out = exchange_search(&square(), &AnticlusterConfig::with_restarts(3), Seed(seed)).unwrap();
            let a = out.partition.assignment();
            assert_eq!(a[0], a[2]);
            assert_eq!(a[1], a[3]);
            assert_ne!(a[0], a[1]);
        }
    }

    #[test]
    fn two_points_forced() {
        let ds = Dataset::from_rows(&[vec![0.0], vec![1.0]], vec![0, 1]).unwrap();
        let out = exchange_search(&ds, &AnticlusterConfig::default(), Seed(1)).unwrap();
        assert_eq!(out.objective, 0.0);
        assert_ne!(out.partition.group(0), out.partition.group(1));
    }

    #[test]
    fn search_is_deterministic_and_monotone() {
        let ds = crate::datagen::generate_gaussian(&crate::datagen::SyntheticSpec::new(20, 3, Seed(4))).unwrap();
        let cfg = AnticlusterConfig::with_restarts(5);
        let a = exchange_search(&ds, &cfg, Seed(7)).unwrap();
        assert_eq!(a, exchange_search(&ds, &cfg, Seed(7)).unwrap());
        for t in &a.restarts {
            assert!(t.final_objective >= t.initial_objective);
        }
        let direct = diversity_objective(&ds, &a.partition).unwrap();
        assert!((direct - a.objective).abs() < 1e-9);
    }

    #[test]
    fn blobs_get_mixed() {
        let rows = vec![vec![0.0, 0.0], vec![0.0, 0.1], vec![10.0, 0.0], vec![10.0, 0.1]];
        let ds = Dataset::from_rows(&rows, vec![0, 0, 1, 1]).unwrap();
        let blobwise = Partition::new(vec![0, 0, 1, 1], 2).unwrap();
        let next = anti_kmeans_pass(&ds, &blobwise).unwrap();
        assert_eq!(next.assignment(), &[1, 0, 0, 1]);
        // the mixed partition is a fixed point
        assert_eq!(anti_kmeans_pass(&ds, &next).unwrap(), next);
    }

    #[test]
    fn identical_points_are_a_fixed_point() {
        let ds = Dataset::from_rows(&vec![vec![2.0, -1.0]; 6], vec![0, 1, 0, 1, 0, 1]).unwrap();
        let p = Partition::new(vec![0, 0, 1, 1, 0, 1], 2).unwrap();
        assert_eq!(anti_kmeans_pass(&ds, &p).unwrap(), p);
    }

    #[test]
    fn purity_examples() {
        let labels = [0, 0, 1, 1];
        let same = Partition::new(vec![0, 0, 1, 1], 2).unwrap();
        let inverted = Partition::new(vec![1, 1, 0, 0], 2).unwrap();
        let mixed = Partition::new(vec![0, 1, 0, 1], 2).unwrap();
        assert_eq!(cluster_purity(&same, &labels).unwrap(), 1.0);
        assert_eq!(cluster_purity(&inverted, &labels).unwrap(), 1.0);
        assert_eq!(cluster_purity(&mixed, &labels).unwrap(), 0.5);
        assert_eq!(cluster_purity(&same, &[1, 1, 0, 0]).unwrap(), 1.0);
        assert!(cluster_purity(&same, &[0, 1]).is_err());
    }

    #[test]
    fn rejects_bad_config() {
        let ds = square();
        let mut cfg = AnticlusterConfig::default();
        cfg.k = 5;
        assert!(exchange_search(&ds, &cfg, Seed(0)).is_err());
        cfg.k = 1;
        assert!(exchange_search(&ds, &cfg, Seed(0)).is_err());
        assert!(exchange_search(&ds, &AnticlusterConfig::with_restarts(0), Seed(0)).is_err());
    }

    #[test]
    fn csv_shape() {
        let p = Partition::new(vec![1, 0], 2).unwrap();
        assert_eq!(p.to_csv(), "index,group\n0,1\n1,0\n");
    }
}
