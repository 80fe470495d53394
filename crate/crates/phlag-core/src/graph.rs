//! Weighted undirected graphs with interned string labels.
//!
//! Graphs here are simple (no self-loops, no parallel edges) and carry
//! strictly positive edge weights. Weights count co-occurrences, so the
//! derived distance of an edge is the inverse of its weight: heavily
//! co-occurring pairs are close. Node identity is a dense `u32` index
//! assigned in first-appearance order by a [`SymbolTable`], which keeps
//! every construction deterministic for identical input order.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

/// Dense node index into a graph's [`SymbolTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    /// The index as a `usize`, for slice access.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl core::fmt::Display for NodeId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bidirectional label ⇄ dense-index map.
///
/// Indices are assigned in first-appearance order, so interning the same
/// label sequence always yields the same ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    labels: Vec<String>,
    index: BTreeMap<String, u32>,
}

impl SymbolTable {
    /// An empty table.
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `label`, assigning the next free index on first
    /// sight.
    pub fn intern(&mut self, label: &str) -> Result<NodeId, GraphError> {
        if label.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        if let Some(&id) = self.index.get(label) {
            return Ok(NodeId(id));
        }
        let id = u32::try_from(self.labels.len()).map_err(|_| GraphError::TooManyNodes)?;
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        Ok(NodeId(id))
    }

    /// Looks up a previously interned label.
    pub fn get(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).map(|&id| NodeId(id))
    }

    /// The label behind `id`. Panics if `id` was never assigned.
    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.index()]
    }

    /// Number of interned labels.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// True if nothing has been interned.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels in id order.
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }
}

/// Undirected weighted edge with `source < target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    /// Smaller endpoint.
    pub source: NodeId,
    /// Larger endpoint.
    pub target: NodeId,
    /// Aggregated co-occurrence weight, strictly positive and finite.
    pub weight: f64,
}

impl Edge {
    /// Filtration distance of this edge: the inverse of its weight.
    pub fn distance(&self) -> f64 {
        1.0 / self.weight
    }
}

/// Errors raised while assembling or querying graphs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    /// An edge connected a node to itself.
    #[error("self-loop on node {node:?} is not allowed")]
    SelfLoop {
        /// Label of the offending node.
        node: String,
    },
    /// An edge weight was zero, negative, or non-finite.
    #[error("edge weight {weight} is not a positive finite number")]
    NonPositiveWeight {
        /// The rejected weight.
        weight: f64,
    },
    /// A node label was the empty string.
    #[error("empty node label")]
    EmptyLabel,
    /// An indexed edge referenced a node outside `0..node_count`.
    #[error("node index {index} out of range for {node_count} nodes")]
    NodeOutOfRange {
        /// The out-of-range index.
        index: u32,
        /// Number of nodes in the graph.
        node_count: usize,
    },
    /// More than `u32::MAX` labels were interned.
    #[error("node count exceeds u32 range")]
    TooManyNodes,
}

/// Converts a co-occurrence weight into a filtration distance `1 / w`.
///
/// Rejects non-positive and non-finite weights, which have no meaningful
/// inverse distance.
pub fn weight_to_distance(weight: f64) -> Result<f64, GraphError> {
    if weight > 0.0 && weight.is_finite() {
        Ok(1.0 / weight)
    } else {
        Err(GraphError::NonPositiveWeight { weight })
    }
}

/// Simple undirected graph with positive edge weights and interned labels.
///
/// Edges are stored sorted by `(source, target)` with `source < target`,
/// so two graphs built from the same logical input compare equal
/// structurally (`PartialEq`) and iterate identically.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightedGraph {
    symbols: SymbolTable,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Builds a graph from labeled `(source, target, weight)` triples.
    ///
    /// Nodes are interned in first-appearance order. Triples naming the
    /// same unordered pair are merged by summing their weights. Self-loops
    /// and non-positive weights are rejected.
    pub fn from_labeled_edges<I, S>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (S, S, f64)>,
        S: AsRef<str>,
    {
        let mut symbols = SymbolTable::new();
        let mut raw = Vec::new();
        for (a, b, w) in edges {
            let u = symbols.intern(a.as_ref())?;
            let v = symbols.intern(b.as_ref())?;
            raw.push((u.0, v.0, w));
        }
        Self::from_interned(symbols, raw)
    }

    /// Builds a graph on nodes `0..node_count` labeled by their decimal
    /// index. Same merging and validity rules as
    /// [`from_labeled_edges`](Self::from_labeled_edges).
    pub fn from_indexed_edges<I>(node_count: u32, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32, f64)>,
    {
        let mut symbols = SymbolTable::new();
        for i in 0..node_count {
            symbols.intern(itoa(i).as_str())?;
        }
        Self::from_interned(symbols, edges)
    }

    /// Assembles a graph from an existing symbol table and indexed edges.
    pub(crate) fn from_interned<I>(symbols: SymbolTable, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32, f64)>,
    {
        let node_count = symbols.len();
        let mut acc: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for (a, b, w) in edges {
            for ix in [a, b] {
                if ix as usize >= node_count {
                    return Err(GraphError::NodeOutOfRange { index: ix, node_count });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop {
                    node: symbols.label(NodeId(a)).to_string(),
                });
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(GraphError::NonPositiveWeight { weight: w });
            }
            let key = if a < b { (a, b) } else { (b, a) };
            *acc.entry(key).or_insert(0.0) += w;
        }
        let edges = acc
            .into_iter()
            .map(|((u, v), weight)| Edge {
                source: NodeId(u),
                target: NodeId(v),
                weight,
            })
            .collect();
        Ok(WeightedGraph { symbols, edges })
    }

    /// Number of nodes (including isolates).
    pub fn node_count(&self) -> usize {
        self.symbols.len()
    }

    /// Number of distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True if the graph has no nodes.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Edges sorted by `(source, target)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The label table.
    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    /// Weight of the edge `{u, v}`, if present.
    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.source, e.target).cmp(&key))
            .ok()
            .map(|i| self.edges[i].weight)
    }

    /// Neighbor lists with edge weights, sorted by neighbor index.
    pub fn adjacency(&self) -> Vec<Vec<(u32, f64)>> {
        let mut adj = alloc::vec![Vec::new(); self.node_count()];
        for e in &self.edges {
            adj[e.source.index()].push((e.target.0, e.weight));
            adj[e.target.index()].push((e.source.0, e.weight));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        adj
    }

    /// Ascending distinct filtration distances (`1 / weight`) over all
    /// edges. The length is the number of distinct weight levels.
    pub fn distance_levels(&self) -> Vec<f64> {
        let mut levels: Vec<f64> = self.edges.iter().map(Edge::distance).collect();
        levels.sort_unstable_by(f64::total_cmp);
        levels.dedup();
        levels
    }

    /// Number of connected components (isolates each count as one).
    pub fn component_count(&self) -> usize {
        let n = self.node_count();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], x: u32) -> u32 {
            let mut root = x;
            while parent[root as usize] != root {
                root = parent[root as usize];
            }
            let mut cur = x;
            while parent[cur as usize] != root {
                let next = parent[cur as usize];
                parent[cur as usize] = root;
                cur = next;
            }
            root
        }
        for e in &self.edges {
            let (ru, rv) = (find(&mut parent, e.source.0), find(&mut parent, e.target.0));
            if ru != rv {
                parent[ru as usize] = rv;
            }
        }
        (0..n as u32).filter(|&i| find(&mut parent, i) == i).count()
    }
}

/// Decimal formatting without `std`.
fn itoa(v: u32) -> String {
    let mut s = String::new();
    core::fmt::Write::write_fmt(&mut s, format_args!("{v}")).expect("writing to String cannot fail");
    s
}
