//! Linear binary classifiers: nearest centroid and L2-regularized logistic
//! regression.

mod logistic;
mod nearest_centroid;

pub use logistic::{
    fit_logistic, logistic_gradient, logistic_objective, LogisticFit, RegularizationConfig,
    RowSpace,
};
pub use nearest_centroid::fit_nearest_centroid;

pub(crate) use logistic::fit_in_row_space;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    NearestCentroid,
    Logistic,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModelKind::NearestCentroid => "nearest-centroid",
            ModelKind::Logistic => "logistic",
        })
    }
}

/// A separating hyperplane `<w, x> + b`.
///
/// Nearest-centroid models also keep both centroids; their weights are
/// `centroid1 - centroid0` and their bias puts the hyperplane on the
/// perpendicular bisector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub kind: ModelKind,
    pub weights: Vec<f64>,
    pub bias: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centroids: Option<[Vec<f64>; 2]>,
}

impl LinearModel {
    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.weights)
    }

    /// `<w, x> + b`, the hyperplane score. For nearest-centroid models this
    /// equals half the difference of squared distances to the centroids.
    pub fn decision_value(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(dot(&self.weights, x) + self.bias)
    }

    /// Signed margin: positive means class 1, negative class 0, zero is the
    /// decision boundary.
    ///
    /// Logistic models return `<w, x> + b`; nearest-centroid models return
    /// `dist(x, centroid0) - dist(x, centroid1)`.
    pub fn predict_margin(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        match (&self.kind, &self.centroids) {
            (ModelKind::NearestCentroid, Some([c0, c1])) => Ok(distance(x, c0) - distance(x, c1)),
            _ => self.decision_value(x),
        }
    }

    /// Probability of class 1. Logistic models only.
    pub fn predict_probability(&self, x: &[f64]) -> Result<f64> {
        if self.kind != ModelKind::Logistic {
            return Err(Error::WrongModelKind { expected: "logistic" });
        }
        Ok(sigmoid(self.decision_value(x)?))
    }

    fn check_dim(&self, actual: usize) -> Result<()> {
        if actual != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                actual,
            });
        }
        Ok(())
    }
}

/// A margin counts as correct only when strictly on the side of `label`.
/// Zero margins (ties) are never correct.
pub fn margin_is_correct(margin: f64, label: u8) -> bool {
    if label == 1 {
        margin > 0.0
    } else {
        margin < 0.0
    }
}

/// Margin oriented toward the true class: positive means correct.
pub fn margin_toward(margin: f64, label: u8) -> f64 {
    if label == 1 {
        margin
    } else {
        -margin
    }
}

pub fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^t)` without overflow.
pub(crate) fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn logistic(weights: Vec<f64>, bias: f64) -> LinearModel {
        LinearModel {
            kind: ModelKind::Logistic,
            weights,
            bias,
            centroids: None,
        }
    }

    #[test]
    fn logistic_margin_and_probability() {
        let m = logistic(vec![1.0, 0.0], -1.0);
        assert_eq!(m.predict_margin(&[1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(m.predict_probability(&[1.0, 0.0]).unwrap(), 0.5);
        assert!(m.predict_margin(&[1.0]).is_err());

        let flat = logistic(vec![0.0, 0.0], 0.0);
        for x in [[0.0, 0.0], [5.0, -3.0], [-1e6, 1e6]] {
            assert_eq!(flat.predict_probability(&x).unwrap(), 0.5);
        }
    }

    #[test]
    fn probability_is_monotone_and_saturates() {
        let mut last = 0.0;
        for t in -40..=40 {
            let p = sigmoid(t as f64);
            assert!(p >= last);
            last = p;
        }
        assert_eq!(sigmoid(800.0), 1.0);
        assert_eq!(sigmoid(-800.0), 0.0);
        assert!((softplus(800.0) - 800.0).abs() < 1e-12);
        assert!((softplus(0.0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn json_shape() {
        let m = logistic(vec![1.5], 0.25);
        let v: serde_json::Value = serde_json::to_value(&m).unwrap();
        assert_eq!(v["kind"], "logistic");
        assert!(v.get("centroids").is_none());
        let back: LinearModel = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn tie_is_never_correct() {
        assert!(!margin_is_correct(0.0, 0));
        assert!(!margin_is_correct(0.0, 1));
        assert!(margin_is_correct(-1e-300, 0));
        assert!(margin_is_correct(1e-300, 1));
    }
}
