use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{Action, InteractionRecord};
use crate::error::{Error, Result};
use crate::graph::{validate_layer_name, ActorId, ActorTable, Layer, MultilayerNetwork};

/// Post–user incidence for a single action type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteLayer {
    pub action: Action,
    posts: BTreeMap<String, BTreeSet<String>>,
}

impl BipartiteLayer {
    pub fn posts(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> + '_ {
        self.posts.iter().map(|(p, u)| (p.as_str(), u))
    }

    pub fn post_count(&self) -> usize {
        self.posts.len()
    }

    pub fn incidence(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.posts
            .iter()
            .flat_map(|(p, users)| users.iter().map(move |u| (p.as_str(), u.as_str())))
    }

    pub fn incidence_len(&self) -> usize {
        self.posts.values().map(BTreeSet::len).sum()
    }

    pub fn users(&self) -> BTreeSet<&str> {
        self.posts.values().flatten().map(String::as_str).collect()
    }
}

pub fn build_bipartite(records: &[InteractionRecord], action: Action) -> BipartiteLayer {
    let mut posts: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.action == action) {
        posts
            .entry(r.post_id.clone())
            .or_default()
            .insert(r.user_id.clone());
    }
    BipartiteLayer { action, posts }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProjectionOptions {
    /// Posts with more users than this are skipped instead of expanded into
    /// a clique. `None` means no cap.
    pub max_users_per_post: Option<usize>,
}

/// User–user graph over external ids, before assembly into a network.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UserGraph {
    users: Vec<String>,
    edges: Vec<(u32, u32)>,
    pub skipped_posts: usize,
}

impl UserGraph {
    /// Builds from explicit users and edges. Users mentioned only in edges
    /// are added; self-loops are dropped and duplicates collapse.
    pub fn new<S: AsRef<str>>(users: &[S], edges: &[(S, S)]) -> Self {
        let mut all: BTreeSet<String> = users.iter().map(|u| u.as_ref().to_string()).collect();
        for (u, v) in edges {
            all.insert(u.as_ref().to_string());
            all.insert(v.as_ref().to_string());
        }
        let users: Vec<String> = all.into_iter().collect();
        let idx = |s: &str| users.binary_search_by(|x| x.as_str().cmp(s)).unwrap() as u32;
        let mut e: Vec<(u32, u32)> = edges
            .iter()
            .map(|(u, v)| (idx(u.as_ref()), idx(v.as_ref())))
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        e.sort_unstable();
        e.dedup();
        UserGraph {
            users,
            edges: e,
            skipped_posts: 0,
        }
    }

    /// Sorted user ids.
    pub fn users(&self) -> &[String] {
        &self.users
    }

    /// Edges as pairs of external ids with the smaller id first, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (self.users[u as usize].as_str(), self.users[v as usize].as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Projects post–user incidence onto users: two users are adjacent iff they
/// share a post. Each post contributes its clique to a deduplicating edge
/// set one post at a time.
pub fn project(bipartite: &BipartiteLayer, opts: ProjectionOptions) -> UserGraph {
    let users: Vec<String> = bipartite.users().into_iter().map(str::to_string).collect();
    let idx = |s: &str| users.binary_search_by(|x| x.as_str().cmp(s)).unwrap() as u32;
    let mut edge_set: HashSet<(u32, u32)> = HashSet::new();
    let mut skipped = 0usize;
    let mut members: Vec<u32> = Vec::new();
    for (_, post_users) in bipartite.posts() {
        if opts.max_users_per_post.is_some_and(|cap| post_users.len() > cap) {
            skipped += 1;
            continue;
        }
        members.clear();
        // BTreeSet iteration is sorted, and so is `users`
        members.extend(post_users.iter().map(|u| idx(u)));
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                edge_set.insert((u, v));
            }
        }
    }
    let mut edges: Vec<(u32, u32)> = edge_set.into_iter().collect();
    edges.sort_unstable();
    UserGraph {
        users,
        edges,
        skipped_posts: skipped,
    }
}

/// Merges named user graphs into one network whose actor table is the
/// sorted union of all users.
pub fn assemble_multilayer(layers: Vec<(String, UserGraph)>) -> Result<MultilayerNetwork> {
    if layers.is_empty() {
        return Err(Error::NoLayers);
    }
    let mut seen = BTreeSet::new();
    for (name, _) in &layers {
        validate_layer_name(name)?;
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateLayer(name.clone()));
        }
    }
    let universe: BTreeSet<&str> = layers
        .iter()
        .flat_map(|(_, g)| g.users.iter().map(String::as_str))
        .collect();
    let table = ActorTable::from_ids(universe.iter().copied())?;
    let n = table.len();
    let mut built = Vec::with_capacity(layers.len());
    for (name, g) in &layers {
        let remap: Vec<ActorId> = g.users.iter().map(|u| table.get(u).unwrap()).collect();
        let edges = g
            .edges
            .iter()
            .map(|&(u, v)| (remap[u as usize], remap[v as usize]));
        built.push(Layer::from_edges(name.clone(), n, edges)?.0);
    }
    let skipped: usize = layers.iter().map(|(_, g)| g.skipped_posts).sum();
    let mut net = MultilayerNetwork::new(table, built)?;
    if skipped > 0 {
        net = net.with_provenance("skipped_posts", skipped.to_string());
    }
    Ok(net)
}

/// Records → one bipartite layer per action → projection → network. Layers
/// are named after their action and appear in the order given.
pub fn build_network(
    records: &[InteractionRecord],
    actions: &[Action],
    opts: ProjectionOptions,
) -> Result<MultilayerNetwork> {
    let layers = actions
        .iter()
        .map(|&a| {
            (
                a.as_str().to_string(),
                project(&build_bipartite(records, a), opts),
            )
        })
        .collect();
    assemble_multilayer(layers)
}
