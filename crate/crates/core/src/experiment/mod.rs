//! Experiment configuration, input loading, and the sweep/bench/evaluate
//! drivers used by the command-line tool.

mod bench;
mod sweep;

use std::fs::File;
use std::io::{BufReader, Read};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cascade::SimConfig;
use crate::error::{Error, Result};
use crate::graph::{read_network, MultilayerNetwork};
use crate::ingest::{
    build_network, parse_interactions, parse_multiplex_edges, Action, InteractionRecord, ProjectionOptions,
};
use crate::seeding::{ArlConfig, Method, SelectionConfig, VoteRankCount};

pub use bench::benchmark_selection;
pub use sweep::{cell_file_stem, evaluate_dir, run_sweep, write_outputs, CellTraces, SweepSummary};

/// Where one network comes from. Exactly one of `interactions`,
/// `multiplex` or `network` must be set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    pub id: String,
    /// Interaction CSV.
    pub interactions: Option<PathBuf>,
    /// Actions to build layers from, in layer order (default: comment, like).
    pub layers: Option<Vec<Action>>,
    /// Multiplex edge list.
    pub multiplex: Option<PathBuf>,
    pub keep_layers: Option<Vec<u64>>,
    /// Serialized network file.
    pub network: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSource {
    Interactions { path: PathBuf, layers: Vec<Action> },
    Multiplex { path: PathBuf, keep_layers: Vec<u64> },
    Network { path: PathBuf },
}

impl NetworkSource {
    pub fn path(&self) -> &Path {
        match self {
            NetworkSource::Interactions { path, .. }
            | NetworkSource::Multiplex { path, .. }
            | NetworkSource::Network { path } => path,
        }
    }
}

impl NetworkSpec {
    pub fn interactions(id: impl Into<String>, path: impl Into<PathBuf>) -> Self {
        NetworkSpec {
            id: id.into(),
            interactions: Some(path.into()),
            layers: None,
            multiplex: None,
            keep_layers: None,
            network: None,
        }
    }

    pub fn source(&self, base: &Path) -> Result<NetworkSource> {
        validate_id(&self.id)?;
        let abs = |p: &PathBuf| if p.is_absolute() { p.clone() } else { base.join(p) };
        match (&self.interactions, &self.multiplex, &self.network) {
            (Some(p), None, None) => Ok(NetworkSource::Interactions {
                path: abs(p),
                layers: self.layers.clone().unwrap_or_else(|| Action::ALL.to_vec()),
            }),
            (None, Some(p), None) => Ok(NetworkSource::Multiplex {
                path: abs(p),
                keep_layers: self.keep_layers.clone().ok_or_else(|| {
                    Error::Config(format!(
                        "network '{}': multiplex input needs keep_layers",
                        self.id
                    ))
                })?,
            }),
            (None, None, Some(p)) => Ok(NetworkSource::Network { path: abs(p) }),
            _ => Err(Error::Config(format!(
                "network '{}': set exactly one of interactions, multiplex, network",
                self.id
            ))),
        }
    }
}

/// Network ids become file names, so they are restricted to `[A-Za-z0-9._-]`
/// and may not contain `__`.
pub fn validate_id(id: &str) -> Result<()> {
    let ok = !id.is_empty()
        && !id.contains("__")
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'));
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!("invalid network id '{id}'")))
    }
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_budget() -> f64 {
    0.01
}

fn default_reps() -> usize {
    1
}

/// A full experiment, usually read from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub networks: Vec<NetworkSpec>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default)]
    pub sim: SimConfig<f64>,
    #[serde(default = "default_budget")]
    pub seed_budget_fraction: f64,
    #[serde(default)]
    pub arl: ArlConfig,
    #[serde(default)]
    pub voterank_count: VoteRankCount,
    #[serde(default)]
    pub max_users_per_post: Option<usize>,
    /// Repetitions when timing seed selection.
    #[serde(default = "default_reps")]
    pub timing_reps: usize,
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(networks: Vec<NetworkSpec>) -> Self {
        ExperimentConfig {
            networks,
            methods: default_methods(),
            sim: SimConfig::default(),
            seed_budget_fraction: default_budget(),
            arl: ArlConfig::default(),
            voterank_count: VoteRankCount::default(),
            max_users_per_post: None,
            timing_reps: default_reps(),
            output_dir: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| e.in_file(path))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.networks.is_empty() {
            return Err(Error::Config("at least one network is required".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("at least one method is required".into()));
        }
        if !(self.seed_budget_fraction > 0.0 && self.seed_budget_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "seed_budget_fraction {} outside (0, 1]",
                self.seed_budget_fraction
            )));
        }
        let mut ids = std::collections::HashSet::new();
        for n in &self.networks {
            validate_id(&n.id)?;
            if !ids.insert(n.id.as_str()) {
                return Err(Error::Config(format!("duplicate network id '{}'", n.id)));
            }
        }
        let mut methods = self.methods.clone();
        methods.sort();
        methods.dedup();
        if methods.len() != self.methods.len() {
            return Err(Error::Config("methods listed twice".into()));
        }
        if self.timing_reps < 1 {
            return Err(Error::Config("timing_reps must be >= 1".into()));
        }
        self.arl.validate()
    }

    pub fn projection(&self) -> ProjectionOptions {
        ProjectionOptions {
            max_users_per_post: self.max_users_per_post,
        }
    }

    /// Seed selection settings for one network; the random ranker's seed is
    /// derived from the master seed and the network id.
    pub fn selection(&self, network_id: &str) -> SelectionConfig {
        SelectionConfig {
            budget_fraction: self.seed_budget_fraction,
            voterank_count: self.voterank_count,
            arl: self.arl.clone(),
            rng_seed: self.sim.master_seed ^ fnv1a(network_id.as_bytes()),
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Parsed input, before the (timed) network construction.
#[derive(Debug, Clone)]
pub enum RawInput {
    Interactions {
        records: Vec<InteractionRecord>,
        layers: Vec<Action>,
    },
    Multiplex {
        text: String,
        keep_layers: Vec<u64>,
    },
    Network {
        text: String,
    },
}

impl RawInput {
    pub fn read(source: &NetworkSource) -> Result<Self> {
        let open = |p: &Path| File::open(p).map_err(|e| Error::io(p, e));
        match source {
            NetworkSource::Interactions { path, layers } => Ok(RawInput::Interactions {
                records: parse_interactions(BufReader::new(open(path)?)).map_err(|e| e.in_file(path))?,
                layers: layers.clone(),
            }),
            NetworkSource::Multiplex { path, keep_layers } => {
                let mut text = String::new();
                open(path)?
                    .read_to_string(&mut text)
                    .map_err(|e| Error::io(path, e))?;
                Ok(RawInput::Multiplex {
                    text,
                    keep_layers: keep_layers.clone(),
                })
            }
            NetworkSource::Network { path } => {
                let mut text = String::new();
                open(path)?
                    .read_to_string(&mut text)
                    .map_err(|e| Error::io(path, e))?;
                Ok(RawInput::Network { text })
            }
        }
    }

    pub fn records(&self) -> Option<&[InteractionRecord]> {
        match self {
            RawInput::Interactions { records, .. } => Some(records),
            _ => None,
        }
    }

    pub fn build(&self, projection: ProjectionOptions) -> Result<MultilayerNetwork> {
        match self {
            RawInput::Interactions { records, layers } => build_network(records, layers, projection),
            RawInput::Multiplex { text, keep_layers } => {
                Ok(parse_multiplex_edges(text.as_bytes(), keep_layers)?.network)
            }
            RawInput::Network { text } => read_network(text.as_bytes()),
        }
    }
}

/// A network ready for seeding, with the time its construction took.
#[derive(Debug, Clone)]
pub struct LoadedNetwork {
    pub id: String,
    pub network: MultilayerNetwork,
    pub records: Option<Vec<InteractionRecord>>,
    pub build_seconds: f64,
}

pub fn load_network(spec: &NetworkSpec, base: &Path, projection: ProjectionOptions) -> Result<LoadedNetwork> {
    let source = spec.source(base)?;
    let raw = RawInput::read(&source)?;
    let started = Instant::now();
    let network = raw
        .build(projection)
        .map_err(|e| e.in_file(source.path()))?
        .with_provenance("id", spec.id.clone());
    let build_seconds = started.elapsed().as_secs_f64();
    let records = match raw {
        RawInput::Interactions { records, .. } => Some(records),
        _ => None,
    };
    Ok(LoadedNetwork {
        id: spec.id.clone(),
        network,
        records,
        build_seconds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_config_defaults_and_sources() {
        let text = r#"
            seed_budget_fraction = 0.02
            [sim]
            activation_probability = 0.05
            master_seed = 7
            [[networks]]
            id = "page1"
            interactions = "data/page1.csv"
            [[networks]]
            id = "flor"
            multiplex = "/abs/flor.edges"
            keep_layers = [1, 2]
        "#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.methods, Method::ALL.to_vec());
        assert_eq!(cfg.sim.max_steps, 10);
        assert_eq!(cfg.sim.runs, 10);
        assert_eq!(cfg.sim.activation_probability, 0.05);
        match cfg.networks[0].source(Path::new("/root/exp")).unwrap() {
            NetworkSource::Interactions { path, layers } => {
                assert_eq!(path, PathBuf::from("/root/exp/data/page1.csv"));
                assert_eq!(layers, vec![Action::Comment, Action::Like]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            cfg.networks[1].source(Path::new("/x")).unwrap(),
            NetworkSource::Multiplex { ref path, .. } if path == Path::new("/abs/flor.edges")
        ));
        let back = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn config_errors() {
        assert!(ExperimentConfig::from_toml("networks = []\nbogus = 1").is_err());
        let cfg = ExperimentConfig::from_toml("networks = []").unwrap();
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::new(vec![NetworkSpec::interactions("a", "a.csv")]);
        cfg.seed_budget_fraction = 0.0;
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig::new(vec![
            NetworkSpec::interactions("a", "a.csv"),
            NetworkSpec::interactions("a", "b.csv"),
        ]);
        assert!(cfg.validate().is_err());
        let mut spec = NetworkSpec::interactions("a", "a.csv");
        spec.network = Some("x.net".into());
        assert!(spec.source(Path::new(".")).is_err());
        assert!(validate_id("a__b").is_err());
        assert!(validate_id("a/b").is_err());
        assert!(validate_id("page-01.v2").is_ok());
    }

    #[test]
    fn random_seed_depends_on_network() {
        let cfg = ExperimentConfig::new(vec![]);
        assert_ne!(cfg.selection("a").rng_seed, cfg.selection("b").rng_seed);
        assert_eq!(cfg.selection("a").rng_seed, cfg.selection("a").rng_seed);
    }
}
