use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{friedman, nemenyi, Alpha, AucResult, RankOrder, TimingRecord};
use crate::cascade::CascadeTrace;
use crate::error::Result;
use crate::num::{mean, sample_std, Real};
use crate::seeding::Method;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AucEntry {
    pub network: String,
    pub method: Method,
    pub runs: Vec<f64>,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanSummary {
    pub statistic: f64,
    pub df: usize,
    pub p: f64,
    pub n: usize,
    pub mean_ranks: BTreeMap<Method, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificantPair {
    pub alpha: Alpha,
    pub a: Method,
    pub b: Method,
    pub rank_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NemenyiSummary {
    pub ranks: BTreeMap<Method, f64>,
    pub cd: BTreeMap<Alpha, f64>,
    pub significant: Vec<SignificantPair>,
}

/// Everything `evaluate` and `sweep` write to `report.json`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub auc: Vec<AucEntry>,
    pub friedman: Option<FriedmanSummary>,
    pub nemenyi: Option<NemenyiSummary>,
    #[serde(default)]
    pub timings: Vec<TimingRecord>,
    #[serde(default)]
    pub notes: Vec<String>,
    /// One entry per (network, method) pair a sweep attempted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellStatus>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellStatus {
    pub network: String,
    pub method: Method,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_auc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Builds the AUC table and, when at least two networks carry every
/// method, the Friedman test and Nemenyi post-hoc comparison.
pub fn evaluate<R: Real>(aucs: &[AucResult<R>], levels: &[Alpha], timings: Vec<TimingRecord>) -> Report {
    let mut report = Report {
        auc: aucs
            .iter()
            .map(|a| AucEntry {
                network: a.network_id.clone(),
                method: a.method,
                runs: a.auc_per_run.iter().map(|x| x.as_f64()).collect(),
                mean: a.mean_auc.as_f64(),
            })
            .collect(),
        timings,
        ..Default::default()
    };

    let mut methods: Vec<Method> = aucs.iter().map(|a| a.method).collect();
    methods.sort();
    methods.dedup();
    let mut networks: Vec<&str> = Vec::new();
    for a in aucs {
        if !networks.contains(&a.network_id.as_str()) {
            networks.push(&a.network_id);
        }
    }
    let mut matrix: Vec<Vec<f64>> = Vec::new();
    for net in &networks {
        let row: Option<Vec<f64>> = methods
            .iter()
            .map(|m| {
                aucs.iter()
                    .find(|a| a.network_id == *net && a.method == *m)
                    .map(|a| a.mean_auc.as_f64())
            })
            .collect();
        match row {
            Some(r) => matrix.push(r),
            None => report.notes.push(format!(
                "network '{net}' lacks some methods; left out of the rank tests"
            )),
        }
    }

    match friedman(&matrix, RankOrder::HigherIsBetter) {
        Ok(f) => {
            let ranks: BTreeMap<Method, f64> = methods
                .iter()
                .copied()
                .zip(f.mean_ranks.iter().copied())
                .collect();
            match nemenyi(&f.mean_ranks, f.n, levels) {
                Ok(nm) => {
                    let mut significant = Vec::new();
                    for (alpha, pairs) in &nm.significant_pairs {
                        for &(i, j) in pairs {
                            significant.push(SignificantPair {
                                alpha: *alpha,
                                a: methods[i],
                                b: methods[j],
                                rank_diff: nm.rank_diff[i][j],
                            });
                        }
                    }
                    report.nemenyi = Some(NemenyiSummary {
                        ranks: ranks.clone(),
                        cd: nm.critical_difference.iter().copied().collect(),
                        significant,
                    });
                }
                Err(e) => report.notes.push(format!("Nemenyi test skipped: {e}")),
            }
            report.friedman = Some(FriedmanSummary {
                statistic: f.statistic,
                df: f.df,
                p: f.p_value,
                n: f.n,
                mean_ranks: ranks,
            });
        }
        Err(e) => report.notes.push(format!("Friedman test skipped: {e}")),
    }
    report
}

/// `network,method,step,mean_coverage` averaged over runs.
pub fn write_coverage_csv<R: Real, W: Write>(
    rows: &[(String, Method, Vec<CascadeTrace<R>>)],
    mut w: W,
) -> Result<()> {
    writeln!(w, "network,method,step,mean_coverage")?;
    for (network, method, traces) in rows {
        let steps = traces.iter().map(|t| t.steps.len()).min().unwrap_or(0);
        for s in 0..steps {
            let cov: Vec<f64> = traces.iter().map(|t| t.steps[s].coverage.as_f64()).collect();
            writeln!(w, "{network},{method},{s},{}", mean(&cov).unwrap_or(0.0))?;
        }
    }
    Ok(())
}

/// `method,networks,mean_auc,std_auc` over per-network mean AUCs.
pub fn write_auc_bars_csv<W: Write>(report: &Report, mut w: W) -> Result<()> {
    writeln!(w, "method,networks,mean_auc,std_auc")?;
    let mut by_method: BTreeMap<Method, Vec<f64>> = BTreeMap::new();
    for e in &report.auc {
        by_method.entry(e.method).or_default().push(e.mean);
    }
    for (m, v) in by_method {
        writeln!(
            w,
            "{m},{},{},{}",
            v.len(),
            mean(&v).unwrap_or(0.0),
            sample_std(&v)
        )?;
    }
    Ok(())
}

pub fn write_timing_csv<W: Write>(timings: &[TimingRecord], mut w: W) -> Result<()> {
    writeln!(
        w,
        "network,method,reps,mean_seconds,std_seconds,includes_graph_build,error"
    )?;
    for t in timings {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            t.network_id,
            t.method,
            t.reps,
            t.mean_seconds,
            t.std_seconds,
            t.includes_graph_build,
            t.error.as_deref().unwrap_or("").replace([',', '\n'], ";")
        )?;
    }
    Ok(())
}
