#![allow(dead_code)]

use erasure_audit::dataset::Dataset;
use erasure_audit::rng::Seed;
use rand::Rng;
use rand_distr::StandardNormal;

/// Gaussian rows with exactly balanced labels in alternating order.
pub fn gaussian(n: usize, d: usize, seed: u64) -> Dataset {
    let mut rng = Seed(seed).rng();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
        .collect();
    let labels = (0..n).map(|i| (i % 2) as u8).collect();
    Dataset::from_rows(&rows, labels).unwrap()
}

pub fn max_abs_diff(a: &nalgebra::DMatrix<f64>, b: &nalgebra::DMatrix<f64>) -> f64 {
    (a - b).iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

pub fn report(id: &str, pass: bool, detail: impl std::fmt::Display) {
    println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
}

/// Objective of L2-regularized logistic regression with unpenalized bias,
/// written out directly from the definition.
pub fn logistic_objective(rows: &[Vec<f64>], labels: &[u8], theta: &[f64], c: f64) -> f64 {
    let d = theta.len() - 1;
    let mut f = 0.5 * theta[..d].iter().map(|w| w * w).sum::<f64>();
    for (x, &y) in rows.iter().zip(labels) {
        let s = if y == 1 { 1.0 } else { -1.0 };
        let z = x.iter().zip(theta).map(|(a, b)| a * b).sum::<f64>() + theta[d];
        let t = -s * z;
        f += c * if t > 0.0 { t + (-t).exp().ln_1p() } else { t.exp().ln_1p() };
    }
    f
}

/// Nesterov accelerated gradient descent with constant step 1/L. Slow but
/// shares nothing with the library's Newton solver.
pub fn logistic_oracle(rows: &[Vec<f64>], labels: &[u8], c: f64, iterations: usize) -> Vec<f64> {
    let d = rows[0].len();
    // L ≤ 1 + c/4 · ‖[X 1]‖_F²
    let frob: f64 = rows.iter().map(|x| x.iter().map(|v| v * v).sum::<f64>() + 1.0).sum();
    let l = 1.0 + 0.25 * c * frob;
    let grad = |theta: &[f64]| {
        let mut g: Vec<f64> = theta[..d].to_vec();
        g.push(0.0);
        for (x, &y) in rows.iter().zip(labels) {
            let s = if y == 1 { 1.0 } else { -1.0 };
            let z = x.iter().zip(theta).map(|(a, b)| a * b).sum::<f64>() + theta[d];
            let r = -s * c / (1.0 + (s * z).exp());
            for j in 0..d {
                g[j] += r * x[j];
            }
            g[d] += r;
        }
        g
    };
    let mut x = vec![0.0; d + 1];
    let mut yv = x.clone();
    let mut t = 1.0f64;
    for _ in 0..iterations {
        let g = grad(&yv);
        let next: Vec<f64> = yv.iter().zip(&g).map(|(a, b)| a - b / l).collect();
        let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
        let beta = (t - 1.0) / t_next;
        yv = next.iter().zip(&x).map(|(n, o)| n + beta * (n - o)).collect();
        x = next;
        t = t_next;
    }
    x
}

/// Best diversity over all balanced bipartitions, by enumeration.
pub fn exhaustive_diversity(ds: &Dataset) -> f64 {
    let n = ds.n();
    let rows = ds.rows();
    let dist = |i: usize, j: usize| {
        rows[i].iter().zip(&rows[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    };
    let mut best = f64::NEG_INFINITY;
    // element 0 always in group 0 removes the mirror-image duplicates
    for mask in 0u32..(1 << (n - 1)) {
        let full = mask << 1;
        if full.count_ones() as usize != n / 2 {
            continue;
        }
        let mut total = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                if (full >> i) & 1 == (full >> j) & 1 {
                    total += dist(i, j);
                }
            }
        }
        best = best.max(total);
    }
    best
}
