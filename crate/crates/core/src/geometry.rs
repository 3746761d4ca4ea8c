//! Pairwise Euclidean geometry over dataset rows.

use nalgebra::DMatrix;
use rayon::prelude::*;

/// Symmetric `N x N` matrix of squared distances between rows, computed from
/// coordinate differences so that identical rows are exactly zero apart.
pub fn pairwise_squared_distances(features: &DMatrix<f64>) -> DMatrix<f64> {
    let n = features.nrows();
    // columns of the transpose are contiguous rows
    let xt = features.transpose();
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = xt.column(i);
            (i + 1..n)
                .map(|j| {
                    let b = xt.column(j);
                    a.iter().zip(b.iter()).map(|(p, q)| (p - q) * (p - q)).sum()
                })
                .collect()
        })
        .collect();
    let mut out = DMatrix::zeros(n, n);
    for (i, row) in upper.into_iter().enumerate() {
        for (offset, d2) in row.into_iter().enumerate() {
            let j = i + 1 + offset;
            out[(i, j)] = d2;
            out[(j, i)] = d2;
        }
    }
    out
}

/// Median of the `N (N - 1) / 2` distances between distinct rows.
pub fn median_pairwise_distance(sq: &DMatrix<f64>) -> f64 {
    let n = sq.nrows();
    let mut d: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| sq[(i, j)].sqrt())
        .collect();
    if d.is_empty() {
        return 0.0;
    }
    let mid = d.len() / 2;
    let (_, &mut upper, _) = d.select_nth_unstable_by(mid, f64::total_cmp);
    if d.len() % 2 == 1 {
        upper
    } else {
        let lower = d[..mid].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lower + upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_and_median() {
        let x = DMatrix::from_row_slice(3, 2, &[0.0, 0.0, 3.0, 4.0, 0.0, 1.0]);
        let sq = pairwise_squared_distances(&x);
        assert_eq!(sq[(0, 1)], 25.0);
        assert_eq!(sq[(1, 0)], 25.0);
        assert_eq!(sq[(0, 2)], 1.0);
        assert_eq!(sq[(1, 2)], 18.0);
        assert_eq!(sq[(2, 2)], 0.0);
        // distances 5, 1, sqrt(18)
        assert_eq!(median_pairwise_distance(&sq), 18f64.sqrt());

        let x = DMatrix::from_row_slice(4, 1, &[0.0, 1.0, 3.0, 7.0]);
        // 1, 3, 7, 2, 6, 4 -> median of 3 and 4
        assert_eq!(median_pairwise_distance(&pairwise_squared_distances(&x)), 3.5);
    }
}
