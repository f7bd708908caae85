//! Text serialization of a [`MultilayerNetwork`].
//!
//! ```text
//! mlcascade-network 1
//! meta <K>
//! <key>\t<value>          K lines
//! actors <N>
//! <external id>           N lines, index order
//! layers <L>
//! layer <name> <M>        then M lines "<u> <v>" with u < v, ascending
//! ```
//!
//! Lines end with LF. Ids and metadata may not contain LF (or TAB, for keys).

use std::io::{BufRead, Write};

use super::{ActorId, ActorTable, Layer, MultilayerNetwork};
use crate::error::{Error, Result};

pub const NETWORK_MAGIC: &str = "mlcascade-network";
const VERSION: u32 = 1;

pub fn write_network<W: Write>(net: &MultilayerNetwork, mut w: W) -> Result<()> {
    writeln!(w, "{NETWORK_MAGIC} {VERSION}")?;
    writeln!(w, "meta {}", net.provenance().len())?;
    for (k, v) in net.provenance() {
        if k.contains(['\t', '\n']) || v.contains('\n') {
            return Err(Error::InvalidArgument(format!(
                "metadata entry '{k}' not serializable"
            )));
        }
        writeln!(w, "{k}\t{v}")?;
    }
    writeln!(w, "actors {}", net.actor_count())?;
    for id in net.actors().ids() {
        if id.contains(['\n', '\r']) || id.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "actor id {id:?} not serializable"
            )));
        }
        writeln!(w, "{id}")?;
    }
    writeln!(w, "layers {}", net.layers().len())?;
    for layer in net.layers() {
        writeln!(w, "layer {} {}", layer.name(), layer.edge_count())?;
        for (u, v) in layer.edges() {
            writeln!(w, "{} {}", u.0, v.0)?;
        }
    }
    w.flush()?;
    Ok(())
}

struct Lines<R> {
    inner: R,
    line: u64,
    buf: String,
}

impl<R: BufRead> Lines<R> {
    fn next(&mut self) -> Result<&str> {
        self.buf.clear();
        self.line += 1;
        if self.inner.read_line(&mut self.buf)? == 0 {
            return Err(Error::parse(self.line, "unexpected end of file"));
        }
        if self.buf.ends_with('\n') {
            self.buf.pop();
            if self.buf.ends_with('\r') {
                self.buf.pop();
            }
        }
        Ok(&self.buf)
    }

    fn keyed_count(&mut self, key: &str) -> Result<usize> {
        let line = self.line + 1;
        let text = self.next()?;
        let rest = text
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| Error::parse(line, format!("expected '{key} <count>'")))?;
        rest.trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("bad count in '{key}' line")))
    }
}

pub fn read_network<R: BufRead>(r: R) -> Result<MultilayerNetwork> {
    let mut lines = Lines {
        inner: r,
        line: 0,
        buf: String::new(),
    };
    let header = lines.next()?.to_string();
    let mut parts = header.split(' ');
    if parts.next() != Some(NETWORK_MAGIC) {
        return Err(Error::parse(1, "not a network file"));
    }
    match parts.next().and_then(|v| v.parse::<u32>().ok()) {
        Some(VERSION) => {}
        _ => return Err(Error::parse(1, "unsupported network file version")),
    }

    let meta_count = lines.keyed_count("meta")?;
    let mut meta = Vec::with_capacity(meta_count);
    for _ in 0..meta_count {
        let line = lines.line + 1;
        let text = lines.next()?;
        let (k, v) = text
            .split_once('\t')
            .ok_or_else(|| Error::parse(line, "metadata line needs key<TAB>value"))?;
        meta.push((k.to_string(), v.to_string()));
    }

    let n = lines.keyed_count("actors")?;
    let mut ids = Vec::with_capacity(n);
    for _ in 0..n {
        ids.push(lines.next()?.to_string());
    }
    let table = ActorTable::from_ids(ids)?;

    let layer_count = lines.keyed_count("layers")?;
    let mut layers = Vec::with_capacity(layer_count);
    for _ in 0..layer_count {
        let line = lines.line + 1;
        let text = lines.next()?;
        let mut parts = text.split(' ');
        let (name, m) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("layer"), Some(name), Some(m), None) => (
                name.to_string(),
                m.parse::<usize>()
                    .map_err(|_| Error::parse(line, "bad edge count"))?,
            ),
            _ => return Err(Error::parse(line, "expected 'layer <name> <edges>'")),
        };
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines.line + 1;
            let text = lines.next()?;
            let mut it = text.split(' ').map(|s| s.parse::<u32>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) if (u as usize) < n && (v as usize) < n => {
                    edges.push((ActorId(u), ActorId(v)))
                }
                _ => return Err(Error::parse(line, "bad edge line")),
            }
        }
        let (layer, _) = Layer::from_edges(name, n, edges)?;
        layers.push(layer);
    }
    let mut net = MultilayerNetwork::new(table, layers)?;
    net.provenance_mut().extend(meta);
    Ok(net)
}
