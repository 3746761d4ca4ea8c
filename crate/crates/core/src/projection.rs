//! Orthogonal projections stored as lists of removed directions.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// The projection `P = I - sum_k u_k u_k^T` onto the orthogonal complement of
/// a set of orthonormal directions.
///
/// Only the directions are stored; [`Projection::matrix`] materializes the
/// dense operator when it is actually needed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    dimension: usize,
    removed_directions: Vec<Vec<f64>>,
}

impl Projection {
    pub fn identity(dimension: usize) -> Self {
        Projection {
            dimension,
            removed_directions: Vec::new(),
        }
    }

    /// Build from arbitrary vectors; each is orthogonalized against the
    /// previous ones. Vectors that vanish after orthogonalization are
    /// rejected.
    pub fn from_directions(dimension: usize, directions: &[Vec<f64>]) -> Result<Self> {
        let mut p = Projection::identity(dimension);
        for v in directions {
            let v = DVector::from_column_slice(v);
            if p.push(&v, 1e-10)?.is_none() {
                return Err(Error::InvalidParameter(
                    "direction is linearly dependent on earlier ones".into(),
                ));
            }
        }
        Ok(p)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn rank_removed(&self) -> usize {
        self.removed_directions.len()
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.removed_directions
    }

    pub fn direction(&self, k: usize) -> DVector<f64> {
        DVector::from_column_slice(&self.removed_directions[k])
    }

    /// Component of `v` orthogonal to every stored direction. Two rounds of
    /// modified Gram-Schmidt keep the result orthogonal to working precision.
    pub fn orthogonalize(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_dim(v.len())?;
        let mut r = v.clone();
        for _ in 0..2 {
            for u in &self.removed_directions {
                let u = DVector::from_column_slice(u);
                let c = r.dot(&u);
                r.axpy(-c, &u, 1.0);
            }
        }
        Ok(r)
    }

    /// Orthogonalize `v`, normalize it, fix its sign and append it.
    ///
    /// Returns the stored unit direction, or `None` if the orthogonal residual
    /// has norm below `min_norm` (nothing left to remove).
    pub fn push(&mut self, v: &DVector<f64>, min_norm: f64) -> Result<Option<DVector<f64>>> {
        let r = self.orthogonalize(v)?;
        let norm = r.norm();
        if !(norm >= min_norm) {
            return Ok(None);
        }
        let mut u = r / norm;
        canonicalize_sign(&mut u);
        self.removed_directions.push(u.as_slice().to_vec());
        Ok(Some(u))
    }

    /// Project a single vector.
    pub fn apply_vec(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_dim(x.len())?;
        let mut out = x.clone();
        for u in &self.removed_directions {
            let u = DVector::from_column_slice(u);
            let c = out.dot(&u);
            out.axpy(-c, &u, 1.0);
        }
        Ok(out)
    }

    /// Project every row of a feature matrix in place.
    pub fn apply_matrix(&self, x: &mut DMatrix<f64>) -> Result<()> {
        self.check_dim(x.ncols())?;
        for u in &self.removed_directions {
            let u = DVector::from_column_slice(u);
            remove_direction(x, &u);
        }
        Ok(())
    }

    /// Dense `D x D` operator.
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut p = DMatrix::identity(self.dimension, self.dimension);
        for u in &self.removed_directions {
            let u = DVector::from_column_slice(u);
            p.ger(-1.0, &u, &u, 1.0);
        }
        p
    }

    fn check_dim(&self, actual: usize) -> Result<()> {
        if actual != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual,
            });
        }
        Ok(())
    }
}

/// `X <- X - (X u) u^T` for a unit vector `u`.
pub(crate) fn remove_direction(x: &mut DMatrix<f64>, u: &DVector<f64>) {
    let coeffs = &*x * u;
    x.ger(-1.0, &coeffs, u, 1.0);
}

/// Flip `u` so that its first non-negligible coordinate is positive.
pub(crate) fn canonicalize_sign(u: &mut DVector<f64>) {
    let scale = u.amax();
    if let Some(first) = u.iter().find(|v| v.abs() > 1e-9 * scale) {
        if *first < 0.0 {
            u.neg_mut();
        }
    }
}

/// Rows of `ds` mapped through `p`; labels unchanged.
pub fn apply_projection(p: &Projection, ds: &Dataset) -> Result<Dataset> {
    let mut features = ds.features().clone();
    p.apply_matrix(&mut features)?;
    ds.with_features(features)
}
