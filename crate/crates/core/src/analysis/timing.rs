use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::num::{mean, sample_std};
use crate::seeding::Method;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRecord {
    pub network_id: String,
    pub method: Method,
    pub reps: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
    pub includes_graph_build: bool,
    /// Set when the method failed; the timing fields are then zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TimingRecord {
    /// Summarizes per-rep durations (sample standard deviation).
    pub fn from_samples(
        network_id: impl Into<String>,
        method: Method,
        samples: &[f64],
        includes_graph_build: bool,
    ) -> Self {
        TimingRecord {
            network_id: network_id.into(),
            method,
            reps: samples.len(),
            mean_seconds: mean(samples).unwrap_or(0.0),
            std_seconds: sample_std(samples),
            includes_graph_build,
            error: None,
        }
    }

    pub fn failed(
        network_id: impl Into<String>,
        method: Method,
        reps: usize,
        includes_graph_build: bool,
        reason: String,
    ) -> Self {
        TimingRecord {
            network_id: network_id.into(),
            method,
            reps,
            mean_seconds: 0.0,
            std_seconds: 0.0,
            includes_graph_build,
            error: Some(reason),
        }
    }
}

/// Runs `work` `reps` times, returning the seconds each call reports.
///
/// `work` returns the duration to record, so callers can time a sub-span
/// (for instance only the final mining pass). Stops at the first error.
pub fn time_reps<F>(reps: usize, mut work: F) -> Result<Vec<f64>>
where
    F: FnMut() -> Result<Option<f64>>,
{
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps.max(1) {
        let started = Instant::now();
        let reported = work()?;
        samples.push(reported.unwrap_or_else(|| started.elapsed().as_secs_f64()));
    }
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_statistics() {
        let one = TimingRecord::from_samples("n", Method::Degree, &[0.7], true);
        assert_eq!(one.std_seconds, 0.0);
        assert_eq!(one.mean_seconds, 0.7);
        let two = TimingRecord::from_samples("n", Method::Degree, &[1.0, 3.0], true);
        assert_eq!(two.mean_seconds, 2.0);
        assert!((two.std_seconds - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn reps_and_reported_spans() {
        let mut calls = 0;
        let s = time_reps(3, || {
            calls += 1;
            Ok(Some(calls as f64))
        })
        .unwrap();
        assert_eq!(s, vec![1.0, 2.0, 3.0]);
        let measured = time_reps(2, || Ok(None)).unwrap();
        assert!(measured.iter().all(|&x| x >= 0.0));
        let err = time_reps(2, || Err(crate::Error::Precondition("boom".into())));
        assert!(err.is_err());
    }
}
