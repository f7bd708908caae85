//! Association-rule seed ranking.
//!
//! Posts are transactions and the users active on a post are its items.
//! Frequent itemsets are mined with Eclat (depth-first intersection of
//! vertical tid-lists). A user's score is the number of frequent itemsets
//! with at least two members that contain the user.
//!
//! Users active on fewer than `θ` posts are dropped before mining. The
//! search starts at a large `θ` and lowers it step by step; the first run
//! that exceeds the resource cap ends the search and the last run that
//! finished supplies the ranking.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{Method, RankedActor, SeedRanking, GLOBAL_LAYER};
use crate::error::{Error, Result};
use crate::graph::MultilayerNetwork;
use crate::ingest::InteractionRecord;
use crate::num::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ArlConfig {
    /// First per-user activity threshold tried.
    pub min_activity_start: usize,
    pub threshold_step: usize,
    /// A mining run that finds more frequent itemsets than this is abandoned.
    pub max_itemsets: usize,
    /// Optional wall-clock cap per mining run.
    pub max_seconds: Option<f64>,
    /// Absolute number of transactions an itemset must appear in.
    pub min_support: usize,
}

impl Default for ArlConfig {
    fn default() -> Self {
        ArlConfig {
            min_activity_start: 10,
            threshold_step: 1,
            max_itemsets: 1_000_000,
            max_seconds: None,
            min_support: 2,
        }
    }
}

impl ArlConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(format!("arl: {m}")));
        if self.min_activity_start < 1 {
            return bad("min_activity_start must be >= 1");
        }
        if self.threshold_step < 1 {
            return bad("threshold_step must be >= 1");
        }
        if self.max_itemsets == 0 {
            return bad("max_itemsets must be > 0");
        }
        if self.max_seconds.is_some_and(|s| s.is_nan() || s <= 0.0) {
            return bad("max_seconds must be > 0");
        }
        if self.min_support < 1 {
            return bad("min_support must be >= 1");
        }
        Ok(())
    }
}

/// Transactions over a sorted item (user) universe.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transactions {
    items: Vec<String>,
    rows: Vec<Vec<u32>>,
}

impl Transactions {
    /// Builds from raw sets of item ids. Empty rows are dropped.
    pub fn from_sets<I, S>(rows: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator,
        S::Item: Into<String>,
    {
        let sets: Vec<BTreeSet<String>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect::<BTreeSet<String>>())
            .filter(|s| !s.is_empty())
            .collect();
        let items: Vec<String> = sets
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let idx = |s: &str| items.binary_search_by(|x| x.as_str().cmp(s)).unwrap() as u32;
        let rows = sets.iter().map(|s| s.iter().map(|u| idx(u)).collect()).collect();
        Transactions { items, rows }
    }

    /// One transaction per post holding every user who acted on it, any action.
    pub fn from_records(records: &[InteractionRecord]) -> Self {
        let mut posts: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for r in records {
            posts.entry(&r.post_id).or_default().insert(&r.user_id);
        }
        Self::from_sets(posts.into_values())
    }

    /// One two-user transaction per edge per layer, for networks loaded
    /// without interaction records.
    pub fn from_network_edges(net: &MultilayerNetwork) -> Self {
        let ids = net.actors();
        Self::from_sets(net.layers().iter().flat_map(|l| {
            l.edges()
                .map(|(u, v)| [ids.id(u).to_string(), ids.id(v).to_string()])
                .collect::<Vec<_>>()
        }))
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of transactions each item appears in.
    pub fn activity(&self) -> Vec<usize> {
        let mut a = vec![0usize; self.items.len()];
        for row in &self.rows {
            for &i in row {
                a[i as usize] += 1;
            }
        }
        a
    }
}

/// A mining run hit its itemset or time cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EclatExceeded;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EclatCounts {
    /// Per item: frequent itemsets of size ≥ 2 containing it.
    pub scores: Vec<u64>,
    /// All frequent itemsets found, singletons included.
    pub itemsets: usize,
    pub multi_itemsets: usize,
}

struct Miner<'a> {
    min_support: usize,
    max_itemsets: usize,
    deadline: Option<Instant>,
    scores: &'a mut [u64],
    itemsets: usize,
    multi: usize,
    prefix: Vec<u32>,
}

impl Miner<'_> {
    fn mine(&mut self, class: &[(u32, Vec<u32>)]) -> std::result::Result<(), EclatExceeded> {
        for (i, (item, tids)) in class.iter().enumerate() {
            self.itemsets += 1;
            if self.itemsets > self.max_itemsets {
                return Err(EclatExceeded);
            }
            if self.itemsets.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d) {
                return Err(EclatExceeded);
            }
            self.prefix.push(*item);
            if self.prefix.len() >= 2 {
                self.multi += 1;
                for &p in &self.prefix {
                    self.scores[p as usize] += 1;
                }
            }
            let mut next = Vec::new();
            for (other, other_tids) in &class[i + 1..] {
                let common = intersect(tids, other_tids);
                if common.len() >= self.min_support {
                    next.push((*other, common));
                }
            }
            if !next.is_empty() {
                self.mine(&next)?;
            }
            self.prefix.pop();
        }
        Ok(())
    }
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// One Eclat run restricted to items active in at least `min_activity`
/// transactions.
pub fn eclat_user_scores(
    tx: &Transactions,
    min_activity: usize,
    min_support: usize,
    max_itemsets: usize,
    max_time: Option<Duration>,
) -> std::result::Result<EclatCounts, EclatExceeded> {
    let activity = tx.activity();
    let mut tidsets: Vec<Vec<u32>> = vec![Vec::new(); tx.items.len()];
    for (t, row) in tx.rows.iter().enumerate() {
        for &i in row {
            if activity[i as usize] >= min_activity {
                tidsets[i as usize].push(t as u32);
            }
        }
    }
    let class: Vec<(u32, Vec<u32>)> = tidsets
        .into_iter()
        .enumerate()
        .filter(|(_, t)| !t.is_empty() && t.len() >= min_support)
        .map(|(i, t)| (i as u32, t))
        .collect();
    let mut scores = vec![0u64; tx.items.len()];
    let mut miner = Miner {
        min_support,
        max_itemsets,
        deadline: max_time.map(|d| Instant::now() + d),
        scores: &mut scores,
        itemsets: 0,
        multi: 0,
        prefix: Vec::new(),
    };
    miner.mine(&class)?;
    let (itemsets, multi) = (miner.itemsets, miner.multi);
    Ok(EclatCounts {
        scores,
        itemsets,
        multi_itemsets: multi,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdAttempt {
    pub threshold: usize,
    /// `None` when the run was abandoned at the cap.
    pub itemsets: Option<usize>,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArlOutcome {
    /// Users with a positive score, best first.
    pub ranking: Vec<(String, u64)>,
    /// Lowest threshold whose run completed.
    pub threshold: Option<usize>,
    pub attempts: Vec<ThresholdAttempt>,
}

impl ArlOutcome {
    /// Time of the run that produced the ranking.
    pub fn final_seconds(&self) -> Option<f64> {
        let t = self.threshold?;
        self.attempts
            .iter()
            .find(|a| a.threshold == t && a.itemsets.is_some())
            .map(|a| a.seconds)
    }

    /// Maps ranked users onto `net`; users absent from the actor table are skipped.
    pub fn to_seed_ranking<R: Real>(&self, net: &MultilayerNetwork) -> SeedRanking<R> {
        SeedRanking {
            layer: GLOBAL_LAYER.to_string(),
            method: Method::Arl,
            ranked: self
                .ranking
                .iter()
                .filter_map(|(id, s)| {
                    net.actors().get(id).map(|actor| RankedActor {
                        actor,
                        score: R::from_u64(*s).expect("score representable"),
                    })
                })
                .collect(),
        }
    }
}

/// Threshold descent followed by scoring from the last completed run.
pub fn rank_arl(tx: &Transactions, cfg: &ArlConfig) -> Result<ArlOutcome> {
    cfg.validate()?;
    if tx.is_empty() {
        return Err(Error::Precondition("ARL needs at least one transaction".into()));
    }
    let max_time = cfg.max_seconds.map(Duration::from_secs_f64);
    let mut attempts = Vec::new();
    let mut best: Option<(usize, EclatCounts)> = None;
    let mut theta = cfg.min_activity_start;
    loop {
        let started = Instant::now();
        let run = eclat_user_scores(tx, theta, cfg.min_support, cfg.max_itemsets, max_time);
        let seconds = started.elapsed().as_secs_f64();
        match run {
            Ok(counts) => {
                attempts.push(ThresholdAttempt {
                    threshold: theta,
                    itemsets: Some(counts.itemsets),
                    seconds,
                });
                best = Some((theta, counts));
            }
            Err(EclatExceeded) => {
                attempts.push(ThresholdAttempt {
                    threshold: theta,
                    itemsets: None,
                    seconds,
                });
                break;
            }
        }
        if theta == 1 {
            break;
        }
        theta = theta.saturating_sub(cfg.threshold_step).max(1);
    }

    let Some((threshold, counts)) = best else {
        return Ok(ArlOutcome {
            ranking: Vec::new(),
            threshold: None,
            attempts,
        });
    };
    let activity = tx.activity();
    let mut order: Vec<usize> = (0..tx.items.len()).filter(|&i| counts.scores[i] > 0).collect();
    order.sort_by(|&a, &b| {
        counts.scores[b]
            .cmp(&counts.scores[a])
            .then(activity[b].cmp(&activity[a]))
            .then(a.cmp(&b))
    });
    Ok(ArlOutcome {
        ranking: order
            .into_iter()
            .map(|i| (tx.items[i].clone(), counts.scores[i]))
            .collect(),
        threshold: Some(threshold),
        attempts,
    })
}

#[cfg(test)]
pub(crate) mod oracle {
    use super::Transactions;

    /// Exhaustive subset enumeration. Only for small item universes.
    pub fn brute_scores(tx: &Transactions, min_activity: usize, min_support: usize) -> Vec<u64> {
        let n = tx.items().len();
        assert!(n <= 20);
        let activity = tx.activity();
        let masks: Vec<u32> = tx
            .rows()
            .iter()
            .map(|r| r.iter().fold(0u32, |m, &i| m | (1 << i)))
            .collect();
        let mut scores = vec![0u64; n];
        for set in 1u32..(1 << n) {
            if set.count_ones() < 2 {
                continue;
            }
            if (0..n).any(|i| set & (1 << i) != 0 && activity[i] < min_activity) {
                continue;
            }
            let support = masks.iter().filter(|&&m| m & set == set).count();
            if support >= min_support {
                for (i, s) in scores.iter_mut().enumerate() {
                    if set & (1 << i) != 0 {
                        *s += 1;
                    }
                }
            }
        }
        scores
    }
}
