//! Multilayer network model.
//!
//! A [`MultilayerNetwork`] is a single actor table shared by an ordered list
//! of named layers. Each layer is an undirected simple graph stored as sorted
//! adjacency lists over dense actor indices. Actors that have no edge in a
//! layer are still part of the table; coupling between layers is implicit in
//! the shared index space.

mod kcore;
mod serial;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use kcore::{core_numbers, ShellAssignment};
pub use serial::{read_network, write_network, NETWORK_MAGIC};

/// Dense internal index of an actor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ActorId(pub u32);

impl ActorId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ActorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl From<usize> for ActorId {
    fn from(i: usize) -> Self {
        ActorId(u32::try_from(i).expect("actor index fits in u32"))
    }
}

/// Bijection between external string ids and contiguous internal indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ActorTable {
    ids: Vec<String>,
    index: HashMap<String, ActorId>,
}

impl ActorTable {
    /// Builds a table in the given order. Duplicate ids are an error.
    pub fn from_ids<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = ActorTable::default();
        for id in ids {
            let id = id.into();
            if table.index.contains_key(&id) {
                return Err(Error::InvalidArgument(format!("duplicate actor id '{id}'")));
            }
            table.push(id);
        }
        Ok(table)
    }

    fn push(&mut self, id: String) -> ActorId {
        let a = ActorId::from(self.ids.len());
        self.index.insert(id.clone(), a);
        self.ids.push(id);
        a
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<ActorId> {
        self.index.get(id).copied()
    }

    pub fn lookup(&self, id: &str) -> Result<ActorId> {
        self.get(id).ok_or_else(|| Error::UnknownActor(id.to_string()))
    }

    pub fn id(&self, a: ActorId) -> &str {
        &self.ids[a.index()]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn iter(&self) -> impl Iterator<Item = (ActorId, &str)> + '_ {
        self.ids
            .iter()
            .enumerate()
            .map(|(i, s)| (ActorId::from(i), s.as_str()))
    }
}

/// One relation type as an undirected simple graph over the actor table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    name: String,
    adjacency: Vec<Vec<ActorId>>,
    edge_count: usize,
}

/// Outcome of building a layer from a raw edge list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeIntake {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

impl Layer {
    /// Builds a layer over `actor_count` actors. Self-loops are dropped and
    /// parallel edges (in either orientation) collapse to one.
    pub fn from_edges<I>(name: impl Into<String>, actor_count: usize, edges: I) -> Result<(Self, EdgeIntake)>
    where
        I: IntoIterator<Item = (ActorId, ActorId)>,
    {
        let name = name.into();
        validate_layer_name(&name)?;
        let mut adjacency: Vec<Vec<ActorId>> = vec![Vec::new(); actor_count];
        let mut intake = EdgeIntake::default();
        let mut raw = 0usize;
        for (u, v) in edges {
            for a in [u, v] {
                if a.index() >= actor_count {
                    return Err(Error::ActorIndexOutOfRange {
                        index: a.index(),
                        count: actor_count,
                    });
                }
            }
            if u == v {
                intake.self_loops_dropped += 1;
                continue;
            }
            raw += 1;
            adjacency[u.index()].push(v);
            adjacency[v.index()].push(u);
        }
        let mut half_degrees = 0usize;
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
            half_degrees += nbrs.len();
        }
        let edge_count = half_degrees / 2;
        intake.duplicates_collapsed = raw - edge_count;
        Ok((
            Layer {
                name,
                adjacency,
                edge_count,
            },
            intake,
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn actor_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted, duplicate-free neighbor list.
    #[inline]
    pub fn neighbors(&self, a: ActorId) -> &[ActorId] {
        &self.adjacency[a.index()]
    }

    #[inline]
    pub fn degree(&self, a: ActorId) -> usize {
        self.adjacency[a.index()].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Mean degree over every actor of the table, isolated ones included.
    pub fn mean_degree(&self) -> f64 {
        if self.adjacency.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.adjacency.len() as f64
        }
    }

    /// Edges with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (ActorId, ActorId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = ActorId::from(u);
            nbrs.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn has_edge(&self, u: ActorId, v: ActorId) -> bool {
        self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    pub fn k_core(&self) -> ShellAssignment {
        ShellAssignment {
            layer: self.name.clone(),
            shell: core_numbers(self),
        }
    }
}

pub(crate) fn validate_layer_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        Err(Error::InvalidLayerName(name.to_string()))
    } else {
        Ok(())
    }
}

/// Actor table plus an ordered list of layers that all index into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilayerNetwork {
    actors: ActorTable,
    layers: Vec<Layer>,
    provenance: BTreeMap<String, String>,
}

impl MultilayerNetwork {
    pub fn new(actors: ActorTable, layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::NoLayers);
        }
        for (i, layer) in layers.iter().enumerate() {
            if layer.actor_count() != actors.len() {
                return Err(Error::InvalidArgument(format!(
                    "layer '{}' spans {} actors, table has {}",
                    layer.name(),
                    layer.actor_count(),
                    actors.len()
                )));
            }
            if layers[..i].iter().any(|l| l.name() == layer.name()) {
                return Err(Error::DuplicateLayer(layer.name().to_string()));
            }
        }
        Ok(MultilayerNetwork {
            actors,
            layers,
            provenance: BTreeMap::new(),
        })
    }

    pub fn with_provenance(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.provenance.insert(key.into(), value.into());
        self
    }

    pub fn provenance(&self) -> &BTreeMap<String, String> {
        &self.provenance
    }

    pub(crate) fn provenance_mut(&mut self) -> &mut BTreeMap<String, String> {
        &mut self.provenance
    }

    pub fn actors(&self) -> &ActorTable {
        &self.actors
    }

    pub fn actor_count(&self) -> usize {
        self.actors.len()
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer_names(&self) -> Vec<&str> {
        self.layers.iter().map(Layer::name).collect()
    }

    pub fn layer_index(&self, name: &str) -> Result<usize> {
        self.layers
            .iter()
            .position(|l| l.name() == name)
            .ok_or_else(|| Error::UnknownLayer(name.to_string()))
    }

    pub fn layer(&self, name: &str) -> Result<&Layer> {
        self.layer_index(name).map(|i| &self.layers[i])
    }

    /// Total edges over all layers, or the edge count of one layer.
    pub fn edge_count(&self, layer: Option<&str>) -> Result<usize> {
        match layer {
            Some(name) => Ok(self.layer(name)?.edge_count()),
            None => Ok(self.layers.iter().map(Layer::edge_count).sum()),
        }
    }

    /// Degree of the actor with external id `actor` in `layer`.
    pub fn degree(&self, layer: &str, actor: &str) -> Result<usize> {
        let l = self.layer(layer)?;
        let a = self.actors.lookup(actor)?;
        Ok(l.degree(a))
    }

    pub fn k_core(&self, layer: &str) -> Result<ShellAssignment> {
        Ok(self.layer(layer)?.k_core())
    }

    /// Number of actors with at least one edge in some layer.
    pub fn non_isolated_count(&self) -> usize {
        (0..self.actor_count())
            .filter(|&i| self.layers.iter().any(|l| l.degree(ActorId::from(i)) > 0))
            .count()
    }

    /// Per-layer summary rows `(layer, nodes with edges, edges)`.
    pub fn summary(&self) -> Vec<(String, usize, usize)> {
        self.layers
            .iter()
            .map(|l| {
                let nodes = l.adjacency.iter().filter(|n| !n.is_empty()).count();
                (l.name().to_string(), nodes, l.edge_count())
            })
            .collect()
    }
}
