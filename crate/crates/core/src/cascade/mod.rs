//! Independent Cascade Model on a multilayer network.
//!
//! Activation is per actor: an actor active on one layer is active on all of
//! them. Each step, every actor activated in the previous step (the
//! frontier) gets one attempt at each of its not-yet-active neighbors on
//! every layer. Attempts are judged against the active set as it stood at
//! the start of the step, and the activations from all layers are merged at
//! the end of the step.
//!
//! Random draws are consumed in a fixed order: layers in network order,
//! frontier actors by ascending index, neighbors by ascending index, one
//! draw per attempt. The processing order named in [`SimConfig::layer_order`]
//! therefore never changes an outcome.

mod trace_csv;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ActorId, MultilayerNetwork};
use crate::num::Real;

pub use trace_csv::{read_traces, write_traces, TRACE_HEADER};

/// Which actors count toward the coverage denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageBase {
    #[default]
    AllActors,
    /// Actors with at least one edge on some layer.
    NonIsolated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, bound(deserialize = "R: Real + Deserialize<'de>"))]
pub struct SimConfig<R> {
    pub activation_probability: R,
    pub max_steps: usize,
    pub runs: usize,
    pub master_seed: u64,
    /// Layer processing order; empty means network order.
    pub layer_order: Vec<String>,
    pub coverage: CoverageBase,
}

impl<R: Real> Default for SimConfig<R> {
    fn default() -> Self {
        SimConfig {
            activation_probability: R::lit(0.01),
            max_steps: 10,
            runs: 10,
            master_seed: 0,
            layer_order: Vec::new(),
            coverage: CoverageBase::AllActors,
        }
    }
}

impl<R: Real> SimConfig<R> {
    pub fn validate(&self, net: &MultilayerNetwork) -> Result<()> {
        let p = self.activation_probability;
        if !(p >= R::zero() && p <= R::one()) {
            return Err(Error::InvalidArgument(format!(
                "activation probability {p} outside [0, 1]"
            )));
        }
        if self.max_steps < 1 {
            return Err(Error::InvalidArgument("max_steps must be >= 1".into()));
        }
        if self.runs < 1 {
            return Err(Error::InvalidArgument("runs must be >= 1".into()));
        }
        if !self.layer_order.is_empty() {
            let mut given: Vec<&str> = self.layer_order.iter().map(String::as_str).collect();
            let mut have = net.layer_names();
            given.sort_unstable();
            have.sort_unstable();
            if given != have {
                return Err(Error::InvalidArgument(format!(
                    "layer order {:?} is not a permutation of {:?}",
                    self.layer_order,
                    net.layer_names()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord<R> {
    pub step: usize,
    pub activated: usize,
    pub coverage: R,
}

/// Cumulative activation per step of one run, steps `0..=max_steps`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeTrace<R> {
    pub run_index: usize,
    pub seed_count: usize,
    pub steps: Vec<StepRecord<R>>,
}

impl<R: Real> CascadeTrace<R> {
    pub fn coverage(&self) -> Vec<R> {
        self.steps.iter().map(|s| s.coverage).collect()
    }

    pub fn final_activated(&self) -> usize {
        self.steps.last().map_or(0, |s| s.activated)
    }
}

/// One activation attempt: `source` tries `target` on `layer` during `step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Attempt {
    pub step: usize,
    pub layer: usize,
    pub source: ActorId,
    pub target: ActorId,
    pub success: bool,
}

fn coverage_denominator(net: &MultilayerNetwork, base: CoverageBase) -> usize {
    match base {
        CoverageBase::AllActors => net.actor_count(),
        CoverageBase::NonIsolated => net.non_isolated_count(),
    }
}

pub fn simulate_once<R: Real, G: Rng + ?Sized>(
    net: &MultilayerNetwork,
    seeds: &[ActorId],
    cfg: &SimConfig<R>,
    rng: &mut G,
) -> Result<CascadeTrace<R>> {
    cfg.validate(net)?;
    run_cascade(net, seeds, cfg, rng, 0, |_| {})
}

/// [`simulate_once`] reporting every attempt to `observe`.
pub fn simulate_observed<R: Real, G: Rng + ?Sized>(
    net: &MultilayerNetwork,
    seeds: &[ActorId],
    cfg: &SimConfig<R>,
    rng: &mut G,
    observe: impl FnMut(Attempt),
) -> Result<CascadeTrace<R>> {
    cfg.validate(net)?;
    run_cascade(net, seeds, cfg, rng, 0, observe)
}

/// Random stream for run `run` of a batch seeded with `master_seed`.
pub fn run_stream(master_seed: u64, run: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(run as u64);
    rng
}

/// `cfg.runs` independent runs, run `r` driven by [`run_stream`]`(master_seed, r)`.
/// Runs execute in parallel; the result is in run order.
pub fn simulate_batch<R: Real>(
    net: &MultilayerNetwork,
    seeds: &[ActorId],
    cfg: &SimConfig<R>,
) -> Result<Vec<CascadeTrace<R>>> {
    cfg.validate(net)?;
    (0..cfg.runs)
        .into_par_iter()
        .map(|r| {
            let mut rng = run_stream(cfg.master_seed, r);
            run_cascade(net, seeds, cfg, &mut rng, r, |_| {})
        })
        .collect()
}

fn run_cascade<R: Real, G: Rng + ?Sized>(
    net: &MultilayerNetwork,
    seeds: &[ActorId],
    cfg: &SimConfig<R>,
    rng: &mut G,
    run_index: usize,
    mut observe: impl FnMut(Attempt),
) -> Result<CascadeTrace<R>> {
    let n = net.actor_count();
    let mut active = vec![false; n];
    let mut frontier: Vec<ActorId> = Vec::with_capacity(seeds.len());
    for &s in seeds {
        if s.index() >= n {
            return Err(Error::ActorIndexOutOfRange {
                index: s.index(),
                count: n,
            });
        }
        if !active[s.index()] {
            active[s.index()] = true;
            frontier.push(s);
        }
    }
    frontier.sort_unstable();
    let seed_count = frontier.len();
    let denom = coverage_denominator(net, cfg.coverage);
    let cov = |count: usize| {
        if denom == 0 {
            R::zero()
        } else {
            R::from_count(count) / R::from_count(denom)
        }
    };
    let p = cfg.activation_probability.as_f64();

    let mut steps = Vec::with_capacity(cfg.max_steps + 1);
    let mut total = seed_count;
    steps.push(StepRecord {
        step: 0,
        activated: total,
        coverage: cov(total),
    });
    let mut fresh = vec![false; n];
    let mut newly: Vec<ActorId> = Vec::new();
    for step in 1..=cfg.max_steps {
        if !frontier.is_empty() {
            newly.clear();
            for (li, layer) in net.layers().iter().enumerate() {
                for &u in &frontier {
                    for &v in layer.neighbors(u) {
                        if active[v.index()] {
                            continue;
                        }
                        let success = rng.gen::<f64>() < p;
                        observe(Attempt {
                            step,
                            layer: li,
                            source: u,
                            target: v,
                            success,
                        });
                        if success && !fresh[v.index()] {
                            fresh[v.index()] = true;
                            newly.push(v);
                        }
                    }
                }
            }
            for &v in &newly {
                fresh[v.index()] = false;
                active[v.index()] = true;
            }
            total += newly.len();
            newly.sort_unstable();
            std::mem::swap(&mut frontier, &mut newly);
        }
        steps.push(StepRecord {
            step,
            activated: total,
            coverage: cov(total),
        });
    }
    Ok(CascadeTrace {
        run_index,
        seed_count,
        steps,
    })
}
