//! Coverage AUC, rank-based comparison of methods across networks, and
//! timing summaries.

mod friedman;
mod gamma;
mod nemenyi;
mod report;
mod timing;

use serde::{Deserialize, Serialize};

use crate::cascade::CascadeTrace;
use crate::error::{Error, Result};
use crate::num::{mean, Real};
use crate::seeding::Method;

pub use friedman::{average_ranks, friedman, FriedmanResult, RankOrder};
pub use gamma::{chi_square_sf, ln_gamma, regularized_gamma_q};
pub use nemenyi::{critical_difference, nemenyi, q_alpha, Alpha, NemenyiResult};
pub use report::{
    evaluate, write_auc_bars_csv, write_coverage_csv, write_timing_csv, AucEntry, CellStatus,
    FriedmanSummary, NemenyiSummary, Report, SignificantPair,
};
pub use timing::{time_reps, TimingRecord};

/// Trapezoidal area under a coverage curve sampled at steps `0..=S`,
/// divided by `S`.
pub fn auc<R: Real>(coverage: &[R]) -> Result<R> {
    if coverage.len() < 2 {
        return Err(Error::InvalidArgument(
            "AUC needs at least two coverage points".into(),
        ));
    }
    let half = R::lit(0.5);
    let area: R = coverage.windows(2).map(|w| (w[0] + w[1]) * half).sum();
    Ok(area / R::from_count(coverage.len() - 1))
}

pub fn trace_auc<R: Real>(trace: &CascadeTrace<R>) -> Result<R> {
    auc(&trace.coverage())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AucResult<R> {
    pub network_id: String,
    pub method: Method,
    pub auc_per_run: Vec<R>,
    pub mean_auc: R,
}

impl<R: Real> AucResult<R> {
    /// AUC per run and their mean. All traces must cover the same number
    /// of steps.
    pub fn from_traces(
        network_id: impl Into<String>,
        method: Method,
        traces: &[CascadeTrace<R>],
    ) -> Result<Self> {
        let Some(first) = traces.first() else {
            return Err(Error::InvalidArgument("no traces".into()));
        };
        let len = first.steps.len();
        if traces.iter().any(|t| t.steps.len() != len) {
            return Err(Error::InvalidArgument(
                "traces cover different step horizons".into(),
            ));
        }
        let per_run = traces.iter().map(trace_auc).collect::<Result<Vec<R>>>()?;
        let mean_auc = mean(&per_run).unwrap_or_else(R::zero);
        Ok(AucResult {
            network_id: network_id.into(),
            method,
            auc_per_run: per_run,
            mean_auc,
        })
    }
}
