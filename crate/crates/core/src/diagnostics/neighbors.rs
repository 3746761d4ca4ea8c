use crate::dataset::Dataset;
use crate::geometry::pairwise_squared_distances;

/// Index of each row's Euclidean nearest neighbor among the other rows.
/// Ties go to the lowest index.
pub fn nearest_neighbors(ds: &Dataset) -> Vec<usize> {
    let sq = pairwise_squared_distances(ds.features());
    let n = ds.n();
    (0..n)
        .map(|i| {
            let mut best = usize::MAX;
            let mut best_d = f64::INFINITY;
            for j in (0..n).filter(|&j| j != i) {
                if sq[(i, j)] < best_d {
                    best = j;
                    best_d = sq[(i, j)];
                }
            }
            best
        })
        .collect()
}

/// Fraction of instances whose nearest neighbor carries the other label.
pub fn opposite_label_nn_proportion(ds: &Dataset) -> f64 {
    let labels = ds.labels();
    let opposite = nearest_neighbors(ds)
        .into_iter()
        .enumerate()
        .filter(|&(i, j)| labels[i] != labels[j])
        .count();
    opposite as f64 / ds.n() as f64
}
