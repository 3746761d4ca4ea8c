use crate::classifiers::{LinearModel, ModelKind};
use crate::dataset::{class_centroids, Dataset};
use crate::error::Result;

/// Store both class centroids. The induced hyperplane has
/// `w = c1 - c0` and `b = (|c0|^2 - |c1|^2) / 2`, so `<w, x> + b > 0`
/// exactly when `x` is strictly nearer `c1`.
pub fn fit_nearest_centroid(ds: &Dataset) -> Result<LinearModel> {
    let (c0, c1) = class_centroids(ds)?;
    let weights = &c1 - &c0;
    let bias = 0.5 * (c0.norm_squared() - c1.norm_squared());
    Ok(LinearModel {
        kind: ModelKind::NearestCentroid,
        weights: weights.as_slice().to_vec(),
        bias,
        centroids: Some([c0.as_slice().to_vec(), c1.as_slice().to_vec()]),
    })
}
