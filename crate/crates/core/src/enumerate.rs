//! Candidate graph universes: built-in connected-graph generation and graph6 file ingestion.
//!
//! Generation extends each connected parent on `n - 1` vertices by a new
//! vertex joined to every nonempty subset. A child is kept only when the
//! new vertex is an acceptable canonical deletion: among the non-cut
//! vertices with the smallest (degree, neighbor-degree sum), the one placed
//! last by the canonical labeling must leave a graph isomorphic to the
//! parent. Children of one parent are deduplicated locally, so no global
//! memory of earlier graphs is needed.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::canonical::{canonical_graph, canonical_labeling, relabel_by_lab};
use crate::graph::Graph;
use crate::graph6::{self, Graph6Error};

/// Largest order accepted by the built-in generator.
pub const MAX_BUILTIN_ORDER: usize = 10;

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("built-in enumeration supports orders 1..={MAX_BUILTIN_ORDER}, got {0}")]
    OrderOutOfRange(usize),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error("line {line}: graph has order {found}, stream order is {expected}")]
    MixedOrder { line: usize, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Builtin,
    File(PathBuf),
}

/// An ordered source of graphs of one order.
pub struct GraphStream {
    origin: Origin,
    order: Option<usize>,
    yielded: usize,
    inner: Box<dyn Iterator<Item = Result<Graph, StreamError>> + Send>,
}

impl GraphStream {
    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Known up front for built-in streams, otherwise set by the first graph read.
    pub fn order(&self) -> Option<usize> {
        self.order
    }

    /// Graphs yielded so far.
    pub fn yielded(&self) -> usize {
        self.yielded
    }

    /// Wraps an in-memory list of graphs, all of one order.
    pub fn from_graphs(graphs: Vec<Graph>) -> Self {
        let order = graphs.first().map(Graph::order);
        GraphStream {
            origin: Origin::Builtin,
            order,
            yielded: 0,
            inner: Box::new(graphs.into_iter().map(Ok)),
        }
    }
}

impl Iterator for GraphStream {
    type Item = Result<Graph, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        let item = self.inner.next()?;
        if let Ok(g) = &item {
            self.order.get_or_insert(g.order());
            self.yielded += 1;
        }
        Some(item)
    }
}

/// Sort key for deletion candidates; smaller is preferred.
fn deletion_key(g: &Graph, degrees: &[u32], v: usize) -> (u32, u32) {
    let mut nbrs = g.neighbors(v);
    let mut sum = 0;
    while nbrs != 0 {
        sum += degrees[nbrs.trailing_zeros() as usize];
        nbrs &= nbrs - 1;
    }
    (degrees[v], sum)
}

/// Canonical children of a canonical connected parent.
pub(crate) fn children(parent: &Graph) -> Vec<Graph> {
    let k = parent.order();
    let mut seen: HashSet<Graph> = HashSet::new();
    let mut out = Vec::new();
    for subset in 1u64..(1u64 << k) {
        let g = parent.add_vertex(subset).expect("order stays within 64");
        let degrees: Vec<u32> = (0..=k).map(|v| g.neighbors(v).count_ones()).collect();
        let new_key = deletion_key(&g, &degrees, k);
        let mut ties = vec![k];
        let mut beaten = false;
        for u in 0..k {
            let key = deletion_key(&g, &degrees, u);
            if key > new_key {
                continue;
            }
            if g.is_cut_vertex(u) {
                continue;
            }
            if key < new_key {
                beaten = true;
                break;
            }
            ties.push(u);
        }
        if beaten {
            continue;
        }
        let lab = canonical_labeling(&g);
        if ties.len() > 1 {
            let mut position = vec![0usize; k + 1];
            for (p, &v) in lab.iter().enumerate() {
                position[v] = p;
            }
            let last = *ties.iter().max_by_key(|&&v| position[v]).expect("ties is nonempty");
            if last != k && canonical_graph(&g.delete_vertex(last)) != *parent {
                continue;
            }
        }
        let child = relabel_by_lab(&g, &lab);
        if seen.insert(child.clone()) {
            out.push(child);
        }
    }
    out
}

/// All connected graphs on `n` vertices, one canonical representative per class.
pub fn connected_graphs_vec(n: usize) -> Result<Vec<Graph>, StreamError> {
    if !(1..=MAX_BUILTIN_ORDER).contains(&n) {
        return Err(StreamError::OrderOutOfRange(n));
    }
    let mut level = vec![Graph::empty(1)];
    for _ in 1..n {
        level = level.iter().flat_map(children).collect();
    }
    Ok(level)
}

/// Streams the connected graphs on `n` vertices; only order `n - 1` is held in memory.
pub fn connected_graphs(n: usize) -> Result<GraphStream, StreamError> {
    if !(1..=MAX_BUILTIN_ORDER).contains(&n) {
        return Err(StreamError::OrderOutOfRange(n));
    }
    let inner: Box<dyn Iterator<Item = Result<Graph, StreamError>> + Send> = if n == 1 {
        Box::new(std::iter::once(Ok(Graph::empty(1))))
    } else {
        let parents = connected_graphs_vec(n - 1)?;
        Box::new(parents.into_iter().flat_map(|p| children(&p)).map(Ok))
    };
    Ok(GraphStream { origin: Origin::Builtin, order: Some(n), yielded: 0, inner })
}

/// Reads graph6 lines lazily; blank lines and the `>>graph6<<` header are skipped.
pub fn read_graph6_stream(path: impl AsRef<Path>) -> Result<GraphStream, StreamError> {
    let path = path.as_ref().to_path_buf();
    let file = File::open(&path).map_err(|source| StreamError::Io { path: path.clone(), source })?;
    let io_path = path.clone();
    let mut expected: Option<usize> = None;
    let mut failed = false;
    let lines = BufReader::new(file).lines().enumerate().filter_map(move |(i, line)| {
        if failed {
            return None;
        }
        let line_no = i + 1;
        let result = match line {
            Err(source) => Err(StreamError::Io { path: io_path.clone(), source }),
            Ok(text) => {
                let text = text.trim_end_matches('\r');
                let text = text.strip_prefix(graph6::HEADER).unwrap_or(text);
                if text.trim().is_empty() {
                    return None;
                }
                graph6::from_graph6(text)
                    .map_err(|source| StreamError::Parse { line: line_no, source })
                    .and_then(|g| match expected {
                        Some(n) if n != g.order() => {
                            Err(StreamError::MixedOrder { line: line_no, expected: n, found: g.order() })
                        }
                        _ => {
                            expected = Some(g.order());
                            Ok(g)
                        }
                    })
            }
        };
        failed = result.is_err();
        Some(result)
    });
    Ok(GraphStream { origin: Origin::File(path), order: None, yielded: 0, inner: Box::new(lines) })
}
