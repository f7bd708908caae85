use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::Path;

use rayon::prelude::*;

use super::{load_network, ExperimentConfig, LoadedNetwork};
use crate::analysis::{
    evaluate, time_reps, write_auc_bars_csv, write_coverage_csv, write_timing_csv, Alpha, AucResult,
    CellStatus, Report, TimingRecord,
};
use crate::cascade::{read_traces, simulate_batch, write_traces, CascadeTrace};
use crate::error::{Error, Result};
use crate::graph::ActorId;
use crate::seeding::{select_seeds, Method, Selection};

/// Traces of one (network, method) cell.
pub type CellTraces = (String, Method, Vec<CascadeTrace<f64>>);

/// `<network>__<method>`, the stem shared by seed and trace files.
pub fn cell_file_stem(network: &str, method: Method) -> String {
    format!("{network}__{method}")
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub report: Report,
    pub failures: usize,
}

impl SweepSummary {
    pub fn cells(&self) -> &[CellStatus] {
        &self.report.cells
    }
}

struct Job {
    net: usize,
    method: Method,
    seeds: Vec<ActorId>,
}

fn create_dir(p: &Path) -> Result<()> {
    fs::create_dir_all(p).map_err(|e| Error::io(p, e))
}

fn create_file(p: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(p).map_err(|e| Error::io(p, e))?))
}

fn failed_cell(network: &str, method: Method, e: &Error) -> CellStatus {
    CellStatus {
        network: network.to_string(),
        method,
        ok: false,
        seeds: None,
        mean_auc: None,
        error: Some(e.to_string()),
    }
}

/// Runs every configured (network, method) cell and writes seeds, traces,
/// `report.json` and the plot tables under `out`.
///
/// Relative input paths resolve against `base`. Cascades run on at most
/// `jobs` worker threads; outputs do not depend on `jobs`. A failing cell
/// is recorded in the report and does not stop the sweep.
pub fn run_sweep(cfg: &ExperimentConfig, base: &Path, out: &Path, jobs: usize) -> Result<SweepSummary> {
    cfg.validate()?;
    for sub in ["seeds", "traces", "plots"] {
        create_dir(&out.join(sub))?;
    }

    let mut loaded: Vec<LoadedNetwork> = Vec::new();
    let mut cells: Vec<CellStatus> = Vec::new();
    let mut timings: Vec<TimingRecord> = Vec::new();
    let mut work: Vec<Job> = Vec::new();

    for spec in &cfg.networks {
        let net = match load_network(spec, base, cfg.projection()) {
            Ok(n) => n,
            Err(e) => {
                cells.extend(cfg.methods.iter().map(|&m| failed_cell(&spec.id, m, &e)));
                continue;
            }
        };
        if let Err(e) = cfg.sim.validate(&net.network) {
            cells.extend(cfg.methods.iter().map(|&m| failed_cell(&spec.id, m, &e)));
            continue;
        }
        let sel_cfg = cfg.selection(&net.id);
        for &method in &cfg.methods {
            let mut last: Option<Selection> = None;
            let timed = time_reps(cfg.timing_reps, || {
                let s = select_seeds::<f64>(&net.network, net.records.as_deref(), method, &sel_cfg)?;
                let span = if method == Method::Arl {
                    s.arl.as_ref().and_then(|a| a.final_seconds())
                } else {
                    None
                };
                last = Some(s);
                Ok(span)
            });
            let selection = match timed.map(|samples| (samples, last.expect("set on success"))) {
                Ok((samples, sel)) => {
                    timings.push(TimingRecord::from_samples(&net.id, method, &samples, false));
                    sel
                }
                Err(e) => {
                    timings.push(TimingRecord::failed(
                        &net.id,
                        method,
                        cfg.timing_reps,
                        false,
                        e.to_string(),
                    ));
                    cells.push(failed_cell(&net.id, method, &e));
                    continue;
                }
            };
            let seeds_path = out
                .join("seeds")
                .join(format!("{}.json", cell_file_stem(&net.id, method)));
            fs::write(&seeds_path, selection.set.to_json()? + "\n").map_err(|e| Error::io(&seeds_path, e))?;
            work.push(Job {
                net: loaded.len(),
                method,
                seeds: selection.actors,
            });
        }
        loaded.push(net);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<CascadeTrace<f64>>>> = pool.install(|| {
        work.par_iter()
            .map(|j| simulate_batch(&loaded[j.net].network, &j.seeds, &cfg.sim))
            .collect()
    });

    let mut aucs: Vec<AucResult<f64>> = Vec::new();
    let mut coverage_rows: Vec<CellTraces> = Vec::new();
    for (job, res) in work.iter().zip(results) {
        let id = &loaded[job.net].id;
        let outcome = res.and_then(|traces| {
            let path = out
                .join("traces")
                .join(format!("{}.csv", cell_file_stem(id, job.method)));
            write_traces(&traces, create_file(&path)?)?;
            let auc = AucResult::from_traces(id.clone(), job.method, &traces)?;
            Ok((traces, auc))
        });
        match outcome {
            Ok((traces, auc)) => {
                cells.push(CellStatus {
                    network: id.clone(),
                    method: job.method,
                    ok: true,
                    seeds: Some(job.seeds.len()),
                    mean_auc: Some(auc.mean_auc),
                    error: None,
                });
                aucs.push(auc);
                coverage_rows.push((id.clone(), job.method, traces));
            }
            Err(e) => cells.push(failed_cell(id, job.method, &e)),
        }
    }

    let order = |c: &CellStatus| {
        (
            cfg.networks.iter().position(|n| n.id == c.network),
            cfg.methods.iter().position(|&m| m == c.method),
        )
    };
    cells.sort_by_key(order);
    let failures = cells.iter().filter(|c| !c.ok).count();

    let mut report = evaluate(&aucs, &Alpha::ALL, timings);
    report.cells = cells;
    write_outputs(&report, &coverage_rows, out)?;
    Ok(SweepSummary { report, failures })
}

/// Writes `report.json` and the three plot tables.
pub fn write_outputs(report: &Report, coverage_rows: &[CellTraces], out: &Path) -> Result<()> {
    let plots = out.join("plots");
    create_dir(&plots)?;
    let report_path = out.join("report.json");
    fs::write(&report_path, report.to_json()? + "\n").map_err(|e| Error::io(&report_path, e))?;
    write_coverage_csv(coverage_rows, create_file(&plots.join("coverage.csv"))?)?;
    write_auc_bars_csv(report, create_file(&plots.join("auc_bars.csv"))?)?;
    write_timing_csv(&report.timings, create_file(&plots.join("timing.csv"))?)?;
    Ok(())
}

/// Recomputes AUCs and the rank tests from `<network>__<method>.csv` trace
/// files in `traces_dir`. Returns the report and the parsed traces.
pub fn evaluate_dir(traces_dir: &Path, levels: &[Alpha]) -> Result<(Report, Vec<CellTraces>)> {
    let mut entries: Vec<_> = fs::read_dir(traces_dir)
        .map_err(|e| Error::io(traces_dir, e))?
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::io(traces_dir, e))?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    entries.sort();
    let mut rows = Vec::new();
    let mut aucs = Vec::new();
    for path in entries {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
        let Some((network, method)) = stem.rsplit_once("__") else {
            return Err(Error::Config(format!(
                "{}: trace file names must be <network>__<method>.csv",
                path.display()
            )));
        };
        let method: Method = method.parse()?;
        let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
        let traces: Vec<CascadeTrace<f64>> =
            read_traces(BufReader::new(file)).map_err(|e| e.in_file(&path))?;
        aucs.push(AucResult::from_traces(network, method, &traces)?);
        rows.push((network.to_string(), method, traces));
    }
    if rows.is_empty() {
        return Err(Error::Config(format!(
            "no trace files in {}",
            traces_dir.display()
        )));
    }
    Ok((evaluate(&aucs, levels, Vec::new()), rows))
}
