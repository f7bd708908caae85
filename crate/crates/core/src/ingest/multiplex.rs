use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{ActorId, ActorTable, Layer, MultilayerNetwork};

/// A network loaded from a `layerID nodeID nodeID [weight]` edge list.
#[derive(Debug, Clone)]
pub struct MultiplexLoad {
    pub network: MultilayerNetwork,
    pub self_loops_dropped: usize,
    /// Requested layer ids that had no rows; they are present as empty layers.
    pub missing_layers: Vec<u64>,
}

/// Reads a multiplex edge list keeping only the requested layers, in the
/// requested order. Blank and `#` lines are skipped; a fourth (weight)
/// column is ignored. Actors are ordered by numeric node id.
pub fn parse_multiplex_edges<R: BufRead>(source: R, keep_layers: &[u64]) -> Result<MultiplexLoad> {
    if keep_layers.is_empty() {
        return Err(Error::NoLayers);
    }
    let keep: BTreeSet<u64> = keep_layers.iter().copied().collect();
    if keep.len() != keep_layers.len() {
        return Err(Error::InvalidArgument("layer ids repeated in keep list".into()));
    }
    let mut rows: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    let mut nodes: BTreeSet<u64> = BTreeSet::new();
    for (i, line) in source.lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = text.split_whitespace().collect();
        if cols.len() < 3 || cols.len() > 4 {
            return Err(Error::parse(
                line_no,
                format!(
                    "expected 'layer node node [weight]', found {} columns",
                    cols.len()
                ),
            ));
        }
        let int = |s: &str, what: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::parse(line_no, format!("non-integer {what} '{s}'")))
        };
        let layer = int(cols[0], "layer id")?;
        let u = int(cols[1], "node id")?;
        let v = int(cols[2], "node id")?;
        if let Some(w) = cols.get(3) {
            w.parse::<f64>()
                .map_err(|_| Error::parse(line_no, format!("non-numeric weight '{w}'")))?;
        }
        if keep.contains(&layer) {
            nodes.insert(u);
            nodes.insert(v);
            rows.entry(layer).or_default().push((u, v));
        }
    }
    let sorted: Vec<u64> = nodes.into_iter().collect();
    let table = ActorTable::from_ids(sorted.iter().map(u64::to_string))?;
    let index = |n: u64| ActorId::from(sorted.binary_search(&n).expect("node collected above"));
    let mut self_loops = 0;
    let mut missing = Vec::new();
    let mut layers = Vec::with_capacity(keep_layers.len());
    for &id in keep_layers {
        let edges = rows.remove(&id).unwrap_or_default();
        if edges.is_empty() {
            missing.push(id);
        }
        let (layer, intake) = Layer::from_edges(
            id.to_string(),
            table.len(),
            edges.into_iter().map(|(u, v)| (index(u), index(v))),
        )?;
        self_loops += intake.self_loops_dropped;
        layers.push(layer);
    }
    let network = MultilayerNetwork::new(table, layers)?;
    Ok(MultiplexLoad {
        network,
        self_loops_dropped: self_loops,
        missing_layers: missing,
    })
}
