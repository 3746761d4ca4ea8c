use serde::{Deserialize, Serialize};

use super::ProbabilityHistogram;
use crate::error::{Error, Result};
use crate::rng::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub iteration: usize,
    pub value: f64,
}

/// Result of one diagnostic run, as written to `<metric>.report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub metric: String,
    pub values: Vec<SeriesPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub histograms: Vec<(usize, ProbabilityHistogram)>,
    /// Parameters the run used, echoed verbatim.
    pub config: serde_json::Value,
    pub seed: Option<Seed>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DiagnosticsReport {
    pub fn new(metric: impl Into<String>, config: serde_json::Value, seed: Option<Seed>) -> Self {
        DiagnosticsReport {
            metric: metric.into(),
            values: Vec::new(),
            histograms: Vec::new(),
            config,
            seed,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, iteration: usize, value: f64) {
        self.values.push(SeriesPoint { iteration, value });
    }

    /// Values are finite and every histogram accounts for `scored`
    /// instances.
    pub fn validate(&self, scored: Option<usize>) -> Result<()> {
        if let Some(p) = self.values.iter().find(|p| !p.value.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "{}: non-finite value at iteration {}",
                self.metric, p.iteration
            )));
        }
        if let Some(n) = scored {
            for (iteration, h) in &self.histograms {
                if h.total() != n {
                    return Err(Error::InvalidParameter(format!(
                        "{}: histogram at iteration {iteration} holds {} of {n} instances",
                        self.metric,
                        h.total()
                    )));
                }
            }
        }
        Ok(())
    }

    /// `iteration,value`.
    pub fn series_csv(&self) -> String {
        let mut out = String::from("iteration,value\n");
        for p in &self.values {
            out.push_str(&format!("{},{}\n", p.iteration, p.value));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_csv() {
        let mut r = DiagnosticsReport::new("nn", serde_json::json!({}), Some(Seed(1)));
        r.push(0, 0.5);
        r.push(1, 0.75);
        assert_eq!(r.series_csv(), "iteration,value\n0,0.5\n1,0.75\n");
        r.histograms.push((0, ProbabilityHistogram::from_probabilities(&[0.2, 0.9], &[0, 1], 20)));
        assert!(r.validate(Some(2)).is_ok());
        assert!(r.validate(Some(3)).is_err());
        r.push(2, f64::NAN);
        assert!(r.validate(None).is_err());
    }
}
