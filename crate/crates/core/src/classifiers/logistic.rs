//! L2-regularized logistic regression solved by damped Newton iterations.
//!
//! Objective, with labels mapped to `y in {-1, +1}` and an unregularized bias:
//!
//! ```text
//! f(w, b) = 1/2 |w|^2 + C * sum_i ln(1 + exp(-y_i (<w, x_i> + b)))
//! ```
//!
//! The minimizer's weights lie in the span of the training rows, so when
//! `D > N` the problem is solved exactly in an `N`-dimensional orthonormal
//! basis of that span (from a QR factorization of `X^T`) and lifted back.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::classifiers::{sigmoid, softplus, LinearModel, ModelKind};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularizationConfig {
    /// Inverse regularization strength `C`.
    pub c: f64,
    /// Stop when the Euclidean norm of the full gradient drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for RegularizationConfig {
    fn default() -> Self {
        RegularizationConfig {
            c: 1.0,
            tolerance: 1e-8,
            max_iterations: 1000,
        }
    }
}

impl RegularizationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidParameter(format!("C must be positive, got {}", self.c)));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// Coordinates of the rows of a feature matrix in an orthonormal basis of
/// their span. With `basis = None` the coordinates are the rows themselves.
#[derive(Debug, Clone)]
pub struct RowSpace {
    basis: Option<DMatrix<f64>>,
    coords: DMatrix<f64>,
}

impl RowSpace {
    pub fn of(features: &DMatrix<f64>) -> Self {
        let (n, d) = features.shape();
        if d <= n {
            return RowSpace {
                basis: None,
                coords: features.clone(),
            };
        }
        let qr = features.transpose().qr();
        RowSpace {
            basis: Some(qr.q()),
            coords: qr.r().transpose(),
        }
    }

    pub fn coords(&self) -> &DMatrix<f64> {
        &self.coords
    }

    /// Map reduced weights back to feature space.
    pub fn lift(&self, v: &DVector<f64>) -> DVector<f64> {
        match &self.basis {
            Some(q) => q * v,
            None => v.clone(),
        }
    }
}

/// Solver output in whatever coordinates the problem was posed in.
#[derive(Debug, Clone)]
pub struct LogisticFit {
    pub weights: DVector<f64>,
    pub bias: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub objective: f64,
}

/// Fit on all rows of `ds`.
pub fn fit_logistic(ds: &Dataset, cfg: &RegularizationConfig) -> Result<LinearModel> {
    let space = RowSpace::of(ds.features());
    let all: Vec<usize> = (0..ds.n()).collect();
    let fit = fit_in_row_space(&space, &all, ds.labels(), cfg)?;
    Ok(LinearModel {
        kind: ModelKind::Logistic,
        weights: space.lift(&fit.weights).as_slice().to_vec(),
        bias: fit.bias,
        centroids: None,
    })
}

/// Fit using the rows `train` of a precomputed row space. Weights in the
/// returned fit are in reduced coordinates.
pub(crate) fn fit_in_row_space(
    space: &RowSpace,
    train: &[usize],
    labels: &[u8],
    cfg: &RegularizationConfig,
) -> Result<LogisticFit> {
    cfg.validate()?;
    let z = space.coords.select_rows(train);
    let y: Vec<f64> = train
        .iter()
        .map(|&i| if labels[i] == 1 { 1.0 } else { -1.0 })
        .collect();
    for class in 0..2u8 {
        let count = train.iter().filter(|&&i| labels[i] == class).count();
        if count == 0 {
            return Err(Error::InsufficientClass {
                class,
                count,
                required: 1,
            });
        }
    }
    newton(&z, &y, cfg)
}

struct Problem<'a> {
    z: &'a DMatrix<f64>,
    y: &'a [f64],
    c: f64,
}

impl Problem<'_> {
    fn margins(&self, v: &DVector<f64>, b: f64) -> DVector<f64> {
        let mut m = self.z * v;
        m.add_scalar_mut(b);
        m
    }

    fn objective(&self, v: &DVector<f64>, b: f64) -> f64 {
        let m = self.margins(v, b);
        let loss: f64 = m.iter().zip(self.y).map(|(mi, yi)| softplus(-yi * mi)).sum();
        0.5 * v.norm_squared() + self.c * loss
    }
}

fn newton(z: &DMatrix<f64>, y: &[f64], cfg: &RegularizationConfig) -> Result<LogisticFit> {
    let p = z.ncols();
    let problem = Problem { z, y, c: cfg.c };
    let mut v = DVector::zeros(p);
    let mut b = 0.0;
    let mut f = problem.objective(&v, b);
    let mut gradient_norm = f64::INFINITY;

    for iteration in 0..=cfg.max_iterations {
        let m = problem.margins(&v, b);
        // dloss/dm_i and d2loss/dm_i^2
        let mut g = DVector::zeros(m.len());
        let mut s = DVector::zeros(m.len());
        for i in 0..m.len() {
            g[i] = -y[i] * sigmoid(-y[i] * m[i]);
            let sig = sigmoid(m[i]);
            s[i] = sig * (1.0 - sig);
        }
        let grad_v = &v + z.tr_mul(&g) * cfg.c;
        let grad_b = cfg.c * g.sum();
        gradient_norm = (grad_v.norm_squared() + grad_b * grad_b).sqrt();
        if gradient_norm <= cfg.tolerance {
            return Ok(LogisticFit {
                weights: v,
                bias: b,
                iterations: iteration,
                gradient_norm,
                objective: f,
            });
        }
        if iteration == cfg.max_iterations {
            break;
        }

        let mut grad = DVector::zeros(p + 1);
        grad.rows_mut(0, p).copy_from(&grad_v);
        grad[p] = grad_b;
        let hessian = hessian(z, &s, cfg.c);
        let step = solve_spd(hessian, &grad);

        let slope = grad.dot(&step);
        let (dv, db) = (step.rows(0, p).into_owned(), step[p]);
        if -slope < 1e-12 * (1.0 + f.abs()) {
            // Newton decrement below objective resolution: a full step is
            // safe and line-search comparisons would be rounding noise.
            v -= &dv;
            b -= db;
            f = problem.objective(&v, b);
            continue;
        }
        let mut t = 1.0;
        loop {
            let cand_v = &v - &dv * t;
            let cand_b = b - db * t;
            let cand_f = problem.objective(&cand_v, cand_b);
            if cand_f <= f - 1e-4 * t * slope || t < 1e-10 {
                v = cand_v;
                b = cand_b;
                f = cand_f;
                break;
            }
            t *= 0.5;
        }
    }
    Err(Error::NonConvergence {
        iterations: cfg.max_iterations,
        gradient_norm,
    })
}

/// Hessian of the objective in `(v, b)`:
/// `[[I + C Z^T S Z, C Z^T s], [C s^T Z, C sum s]]`.
fn hessian(z: &DMatrix<f64>, s: &DVector<f64>, c: f64) -> DMatrix<f64> {
    let (n, p) = z.shape();
    let mut weighted = z.clone();
    for i in 0..n {
        let w = s[i].sqrt();
        weighted.row_mut(i).scale_mut(w);
    }
    let mut h = DMatrix::zeros(p + 1, p + 1);
    let mut block = weighted.tr_mul(&weighted) * c;
    for j in 0..p {
        block[(j, j)] += 1.0;
    }
    h.view_mut((0, 0), (p, p)).copy_from(&block);
    let cross = z.tr_mul(s) * c;
    h.view_mut((0, p), (p, 1)).copy_from(&cross);
    h.view_mut((p, 0), (1, p)).copy_from(&cross.transpose());
    h[(p, p)] = c * s.sum();
    h
}

/// Solve `H x = g` for symmetric positive (semi)definite `H`, adding a small
/// ridge on the bias entry if the factorization fails. The weight block is
/// always at least the identity, so only the bias curvature can vanish.
fn solve_spd(h: DMatrix<f64>, g: &DVector<f64>) -> DVector<f64> {
    let p = h.nrows() - 1;
    let mut ridge = 0.0;
    loop {
        let mut hr = h.clone();
        hr[(p, p)] += ridge;
        if let Some(chol) = hr.cholesky() {
            return chol.solve(g);
        }
        ridge = if ridge == 0.0 { 1e-12 } else { ridge * 100.0 };
    }
}

/// The logistic objective at `(weights, bias)` on `ds`.
pub fn logistic_objective(ds: &Dataset, weights: &[f64], bias: f64, c: f64) -> f64 {
    let y = signed_labels(ds);
    let problem = Problem {
        z: ds.features(),
        y: &y,
        c,
    };
    problem.objective(&DVector::from_column_slice(weights), bias)
}

/// Gradient of [`logistic_objective`] with respect to `(weights, bias)`.
pub fn logistic_gradient(ds: &Dataset, weights: &[f64], bias: f64, c: f64) -> (DVector<f64>, f64) {
    let y = signed_labels(ds);
    let w = DVector::from_column_slice(weights);
    let mut m = ds.features() * &w;
    m.add_scalar_mut(bias);
    let g = DVector::from_iterator(m.len(), (0..m.len()).map(|i| -y[i] * sigmoid(-y[i] * m[i])));
    (&w + ds.features().tr_mul(&g) * c, c * g.sum())
}

fn signed_labels(ds: &Dataset) -> Vec<f64> {
    ds.labels()
        .iter()
        .map(|&l| if l == 1 { 1.0 } else { -1.0 })
        .collect()
}
