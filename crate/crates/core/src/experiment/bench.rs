use std::path::Path;
use std::time::Instant;

use super::{ExperimentConfig, RawInput};
use crate::analysis::{time_reps, TimingRecord};
use crate::error::{Error, Result};
use crate::seeding::{select_seeds, Method};

/// Times seed selection for every configured (network, method) pair.
///
/// Network-based methods are timed end to end: building the network from
/// the parsed input plus ranking. ARL is timed on its final mining pass
/// only. Input parsing is never timed. Failures become records with
/// `error` set.
pub fn benchmark_selection(cfg: &ExperimentConfig, base: &Path, reps: usize) -> Result<Vec<TimingRecord>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for spec in &cfg.networks {
        let raw = match spec.source(base).and_then(|s| RawInput::read(&s)) {
            Ok(r) => r,
            Err(e) => {
                for &m in &cfg.methods {
                    out.push(TimingRecord::failed(
                        &spec.id,
                        m,
                        reps,
                        m.needs_network(),
                        e.to_string(),
                    ));
                }
                continue;
            }
        };
        let sel_cfg = cfg.selection(&spec.id);
        let prebuilt = raw.build(cfg.projection());
        for &method in &cfg.methods {
            let samples = if method == Method::Arl {
                match &prebuilt {
                    Ok(net) => time_reps(reps, || {
                        let s = select_seeds::<f64>(net, raw.records(), method, &sel_cfg)?;
                        Ok(s.arl.and_then(|a| a.final_seconds()))
                    }),
                    Err(e) => Err(Error::Precondition(e.to_string())),
                }
            } else {
                time_reps(reps, || {
                    let started = Instant::now();
                    let net = raw.build(cfg.projection())?;
                    select_seeds::<f64>(&net, raw.records(), method, &sel_cfg)?;
                    Ok(Some(started.elapsed().as_secs_f64()))
                })
            };
            out.push(match samples {
                Ok(s) => TimingRecord::from_samples(&spec.id, method, &s, method.needs_network()),
                Err(e) => TimingRecord::failed(&spec.id, method, reps, method.needs_network(), e.to_string()),
            });
        }
    }
    Ok(out)
}
