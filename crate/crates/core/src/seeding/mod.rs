//! Seed selection: per-layer rankings and their interleaving into a seed set.

mod arl;
mod centrality;
mod voterank;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ActorId, MultilayerNetwork};
use crate::ingest::InteractionRecord;
use crate::num::Real;

pub use arl::{
    eclat_user_scores, rank_arl, ArlConfig, ArlOutcome, EclatExceeded, ThresholdAttempt, Transactions,
};
pub use centrality::{rank_degree, rank_kshell, rank_random};
pub use voterank::rank_voterank;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Degree,
    #[serde(rename = "kshell")]
    KShell,
    #[serde(rename = "voterank")]
    VoteRank,
    Arl,
    Random,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Degree,
        Method::KShell,
        Method::VoteRank,
        Method::Arl,
        Method::Random,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Degree => "degree",
            Method::KShell => "kshell",
            Method::VoteRank => "voterank",
            Method::Arl => "arl",
            Method::Random => "random",
        }
    }

    /// Whether the method ranks actors from the built network (as opposed
    /// to raw interaction records).
    pub fn needs_network(self) -> bool {
        !matches!(self, Method::Arl)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "degree" => Ok(Method::Degree),
            "kshell" | "k-shell" => Ok(Method::KShell),
            "voterank" => Ok(Method::VoteRank),
            "arl" => Ok(Method::Arl),
            "random" => Ok(Method::Random),
            _ => Err(Error::UnknownMethod(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedActor<R> {
    pub actor: ActorId,
    pub score: R,
}

/// Ordered candidates from one layer (or `"global"`), best first.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedRanking<R> {
    pub layer: String,
    pub method: Method,
    pub ranked: Vec<RankedActor<R>>,
}

impl<R: Real> SeedRanking<R> {
    pub fn actors(&self) -> impl Iterator<Item = ActorId> + '_ {
        self.ranked.iter().map(|r| r.actor)
    }

    pub fn len(&self) -> usize {
        self.ranked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranked.is_empty()
    }
}

pub const GLOBAL_LAYER: &str = "global";

/// Final seed set in external ids, as serialized to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSet {
    pub method: Method,
    pub budget_fraction: f64,
    pub seeds: Vec<String>,
}

impl SeedSet {
    pub fn from_actors(
        net: &MultilayerNetwork,
        method: Method,
        budget_fraction: f64,
        actors: &[ActorId],
    ) -> Self {
        SeedSet {
            method,
            budget_fraction,
            seeds: actors.iter().map(|&a| net.actors().id(a).to_string()).collect(),
        }
    }

    /// Maps external ids onto `net`, failing on the first unknown id.
    pub fn resolve(&self, net: &MultilayerNetwork) -> Result<Vec<ActorId>> {
        self.seeds.iter().map(|s| net.actors().lookup(s)).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Number of seeds for a fraction of `actor_count`: rounded up, at least
/// one, never more than the actor count.
pub fn seed_budget(fraction: f64, actor_count: usize) -> Result<usize> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "budget fraction {fraction} outside (0, 1]"
        )));
    }
    if actor_count == 0 {
        return Ok(0);
    }
    let raw = fraction * actor_count as f64;
    let k = (raw - 1e-9 * raw.max(1.0)).ceil() as usize;
    Ok(k.clamp(1, actor_count))
}

/// Round-robin over the rankings, each turn taking that ranking's next
/// actor not yet selected. Exhausted rankings are skipped.
pub fn interleave<R: Real>(rankings: &[SeedRanking<R>], budget: usize) -> Vec<ActorId> {
    let mut cursors = vec![0usize; rankings.len()];
    let mut chosen = Vec::with_capacity(budget);
    let mut taken = std::collections::HashSet::new();
    while chosen.len() < budget {
        let mut progressed = false;
        for (ranking, cursor) in rankings.iter().zip(cursors.iter_mut()) {
            if chosen.len() >= budget {
                break;
            }
            while let Some(entry) = ranking.ranked.get(*cursor) {
                *cursor += 1;
                if taken.insert(entry.actor) {
                    chosen.push(entry.actor);
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    chosen
}

/// How many actors VoteRank selects per layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VoteRankCount {
    /// The full seed budget on every layer, so the interleave can always
    /// fill the set even when layers agree.
    #[default]
    Budget,
    /// The number of users ARL managed to rank.
    MatchArl,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SelectionConfig {
    pub budget_fraction: f64,
    pub voterank_count: VoteRankCount,
    pub arl: ArlConfig,
    pub rng_seed: u64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            budget_fraction: 0.01,
            voterank_count: VoteRankCount::Budget,
            arl: ArlConfig::default(),
            rng_seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Selection {
    pub set: SeedSet,
    pub actors: Vec<ActorId>,
    pub budget: usize,
    /// ARL threshold search details, when ARL ran.
    pub arl: Option<ArlOutcome>,
}

fn arl_outcome(
    net: &MultilayerNetwork,
    records: Option<&[InteractionRecord]>,
    cfg: &ArlConfig,
) -> Result<ArlOutcome> {
    match records {
        Some(recs) => rank_arl(&Transactions::from_records(recs), cfg),
        None => rank_arl(&Transactions::from_network_edges(net), cfg),
    }
}

/// Runs one strategy end to end on a built network.
///
/// ARL consumes `records` when given; otherwise every edge of every layer
/// is treated as a two-user transaction.
pub fn select_seeds<R: Real>(
    net: &MultilayerNetwork,
    records: Option<&[InteractionRecord]>,
    method: Method,
    cfg: &SelectionConfig,
) -> Result<Selection> {
    let budget = seed_budget(cfg.budget_fraction, net.actor_count())?;
    let mut arl_result = None;
    let actors = match method {
        Method::Arl => {
            let outcome = arl_outcome(net, records, &cfg.arl)?;
            let ranking: SeedRanking<R> = outcome.to_seed_ranking(net);
            arl_result = Some(outcome);
            ranking.actors().take(budget).collect()
        }
        _ => {
            let mut rankings: Vec<SeedRanking<R>> = Vec::with_capacity(net.layers().len());
            let voterank_count = match cfg.voterank_count {
                VoteRankCount::Budget => budget,
                VoteRankCount::Fixed(n) => n,
                VoteRankCount::MatchArl if method == Method::VoteRank => {
                    let outcome = arl_outcome(net, records, &cfg.arl)?;
                    let n = outcome.ranking.len();
                    arl_result = Some(outcome);
                    n.max(1)
                }
                VoteRankCount::MatchArl => budget,
            };
            for (i, layer) in net.layers().iter().enumerate() {
                let ranking = match method {
                    Method::Degree => rank_degree(net, layer.name())?,
                    Method::KShell => rank_kshell(net, layer.name())?,
                    Method::VoteRank => rank_voterank(net, layer.name(), voterank_count)?,
                    Method::Random => {
                        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
                        rng.set_stream(i as u64);
                        rank_random(net, layer.name(), &mut rng)?
                    }
                    Method::Arl => unreachable!(),
                };
                rankings.push(ranking);
            }
            interleave(&rankings, budget)
        }
    };
    Ok(Selection {
        set: SeedSet::from_actors(net, method, cfg.budget_fraction, &actors),
        actors,
        budget,
        arl: arl_result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranking(ids: &[u32]) -> SeedRanking<f64> {
        SeedRanking {
            layer: "l".into(),
            method: Method::Degree,
            ranked: ids
                .iter()
                .enumerate()
                .map(|(i, &a)| RankedActor {
                    actor: ActorId(a),
                    score: (ids.len() - i) as f64,
                })
                .collect(),
        }
    }

    #[test]
    fn interleave_round_robin() {
        // A..H = 0..7
        let got = interleave(&[ranking(&[0, 1, 2, 3]), ranking(&[4, 5, 6, 7])], 4);
        assert_eq!(got, vec![ActorId(0), ActorId(4), ActorId(1), ActorId(5)]);
    }

    #[test]
    fn interleave_skips_duplicates() {
        // layer1 {A,B}, layer2 {A,C}
        let got = interleave(&[ranking(&[0, 1]), ranking(&[0, 2])], 3);
        assert_eq!(got, vec![ActorId(0), ActorId(2), ActorId(1)]);
    }

    #[test]
    fn interleave_single_and_exhausted() {
        assert_eq!(
            interleave(&[ranking(&[0, 1, 2])], 2),
            vec![ActorId(0), ActorId(1)]
        );
        let got = interleave(&[ranking(&[0]), ranking(&[0, 1])], 10);
        assert_eq!(got, vec![ActorId(0), ActorId(1)]);
        assert!(interleave::<f64>(&[], 3).is_empty());
    }

    #[test]
    fn budget_rounding() {
        assert_eq!(seed_budget(0.01, 2000).unwrap(), 20);
        assert_eq!(seed_budget(0.01, 2001).unwrap(), 21);
        assert_eq!(seed_budget(0.01, 5).unwrap(), 1);
        assert_eq!(seed_budget(1.0, 5).unwrap(), 5);
        assert_eq!(seed_budget(0.01, 0).unwrap(), 0);
        assert!(seed_budget(0.0, 5).is_err());
        assert!(seed_budget(1.5, 5).is_err());
        for n in 1..5000 {
            let b = seed_budget(0.01, n).unwrap();
            assert_eq!(b, n.div_ceil(100));
        }
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{}\"", m.as_str()));
        }
        let err = "pagerank".parse::<Method>().unwrap_err().to_string();
        assert!(err.contains("degree, kshell, voterank, arl, random"), "{err}");
    }

    #[test]
    fn seed_set_json_round_trip() {
        let s = SeedSet {
            method: Method::VoteRank,
            budget_fraction: 0.01,
            seeds: vec!["B".into(), "A".into()],
        };
        assert_eq!(SeedSet::from_json(&s.to_json().unwrap()).unwrap(), s);
        let v: serde_json::Value = serde_json::from_str(&s.to_json().unwrap()).unwrap();
        assert_eq!(v["method"], "voterank");
        assert_eq!(v["seeds"][0], "B");
    }

    #[test]
    fn resolve_fails_on_unknown() {
        let net = crate::graph::fixtures::single(&["a", "b"], &[("a", "b")]);
        let s = SeedSet {
            method: Method::Degree,
            budget_fraction: 0.5,
            seeds: vec!["a".into(), "zz".into()],
        };
        assert!(matches!(s.resolve(&net), Err(Error::UnknownActor(z)) if z == "zz"));
    }

    #[test]
    fn select_fills_budget_across_layers() {
        let net = crate::graph::fixtures::multi(
            &["a", "b", "c", "d", "e"],
            &[
                ("x", &[("a", "b"), ("a", "c"), ("a", "d")]),
                ("y", &[("a", "e"), ("b", "e"), ("c", "e")]),
            ],
        );
        let cfg = SelectionConfig {
            budget_fraction: 0.6,
            ..Default::default()
        };
        for m in Method::ALL {
            let sel = select_seeds::<f64>(&net, None, m, &cfg).unwrap();
            assert_eq!(sel.budget, 3);
            match m {
                Method::Arl => {}
                // both layers are stars: votes run out after each hub
                Method::VoteRank => assert_eq!(sel.set.seeds, vec!["a", "e"]),
                _ => assert_eq!(sel.actors.len(), 3, "{m}"),
            }
            let mut uniq = sel.actors.clone();
            uniq.sort();
            uniq.dedup();
            assert_eq!(uniq.len(), sel.actors.len());
        }
        let deg = select_seeds::<f64>(&net, None, Method::Degree, &cfg).unwrap();
        assert_eq!(deg.set.seeds, vec!["a", "e", "b"]);
    }
}
