//! Flag (clique) complex enumeration with inverse-weight filtration values.
//!
//! Every `(k+1)`-clique of the graph becomes a `k`-simplex. Vertices enter
//! the filtration at value `0`; a higher simplex enters when its slowest
//! edge does, i.e. at the maximum inverse weight over its edges. The
//! resulting complex, swept by ascending threshold, equals the
//! Vietoris–Rips filtration of the metric `d(u,v) = 1/w(u,v)` (with `∞`
//! for non-adjacent pairs) truncated at the dimension cap.
//!
//! Enumeration uses ordered neighbor-intersection expansion: a clique with
//! top vertex `v` is only ever extended by common neighbors above `v`, so
//! each clique is produced exactly once, already sorted. A configurable
//! cell budget guards against combinatorial blowup.

use alloc::vec::Vec;

use smallvec::SmallVec;
use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::Fnv1a;

/// Inline capacity for simplex vertex lists; dimension caps in practice
/// stay ≤ 5, so vertex lists almost never spill to the heap.
pub(crate) type VertexList = SmallVec<[u32; 6]>;

/// Default maximum cell dimension enumerated (supports homology up to
/// dimension 3).
pub const DEFAULT_DIMENSION_CAP: usize = 4;

/// Default ceiling on the total number of enumerated cells.
pub const DEFAULT_CELL_BUDGET: usize = 50_000_000;

/// One cell of the flag complex: a sorted vertex list plus the filtration
/// value at which the cell appears.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: VertexList,
    value: f64,
}

impl Simplex {
    /// Builds a simplex from strictly increasing vertices. Intended for
    /// tests and small fixtures; enumeration constructs cells directly.
    pub fn new(vertices: &[u32], value: f64) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]), "vertices must strictly increase");
        Simplex {
            vertices: VertexList::from_slice(vertices),
            value,
        }
    }

    /// Vertices in strictly increasing order; `k+1` entries for a k-cell.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Cell dimension `k` (= vertex count − 1).
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Threshold at which this cell enters the filtration.
    pub fn filtration_value(&self) -> f64 {
        self.value
    }
}

/// Errors from flag-complex enumeration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FiltrationError {
    /// Enumeration hit the configured cell budget before completing.
    #[error("cell budget of {budget} exhausted after {enumerated} cells; raise the budget or lower the dimension cap")]
    CellBudgetExceeded {
        /// Cells enumerated before giving up.
        enumerated: usize,
        /// The configured budget.
        budget: usize,
    },
}

/// The fully enumerated, canonically ordered flag filtration of one graph.
///
/// Simplices are sorted by `(filtration_value, dimension, vertex list)`
/// ascending, which places every face before its cofaces and makes the
/// ordering (and hence every downstream artifact) deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagFiltration {
    simplices: Vec<Simplex>,
    dimension_cap: usize,
    node_count: usize,
    level_values: Vec<f64>,
    fingerprint: u64,
}

impl FlagFiltration {
    /// Simplices in canonical filtration order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Total number of cells.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    /// True if the complex has no cells at all (empty source graph).
    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Maximum cell dimension that enumeration was allowed to produce.
    pub fn dimension_cap(&self) -> usize {
        self.dimension_cap
    }

    /// Node count of the source graph.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Ascending distinct filtration values (the threshold grid).
    pub fn level_values(&self) -> &[f64] {
        &self.level_values
    }

    /// Deterministic content hash of the ordered filtration; identical
    /// graphs (same symbol table) always produce identical fingerprints.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Highest dimension with at least one cell, if any cell exists.
    pub fn max_dimension(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dimension).max()
    }

    /// Cell counts Δ_0, Δ_1, … up to the highest occupied dimension.
    /// An empty complex reports a single zero entry.
    pub fn cell_counts(&self) -> Vec<u64> {
        let top = match self.max_dimension() {
            Some(d) => d,
            None => return alloc::vec![0],
        };
        let mut counts = alloc::vec![0u64; top + 1];
        for s in &self.simplices {
            counts[s.dimension()] += 1;
        }
        counts
    }
}

/// Enumerates the flag filtration with the default cell budget.
pub fn enumerate_flag_complex(g: &WeightedGraph, dimension_cap: usize) -> Result<FlagFiltration, FiltrationError> {
    enumerate_flag_complex_with_budget(g, dimension_cap, DEFAULT_CELL_BUDGET)
}

/// Enumerates every clique of the graph with at most `dimension_cap + 1`
/// vertices, assigns max-edge inverse-weight filtration values, and
/// returns the canonically sorted filtration.
///
/// Fails with [`FiltrationError::CellBudgetExceeded`] as soon as the cell
/// count would pass `cell_budget`.
pub fn enumerate_flag_complex_with_budget(
    g: &WeightedGraph,
    dimension_cap: usize,
    cell_budget: usize,
) -> Result<FlagFiltration, FiltrationError> {
    let n = g.node_count();
    // Adjacency with inverse-weight distances, sorted by neighbor index.
    let dist_adj: Vec<Vec<(u32, f64)>> = g
        .adjacency()
        .into_iter()
        .map(|list| list.into_iter().map(|(v, w)| (v, 1.0 / w)).collect())
        .collect();

    let mut simplices: Vec<Simplex> = Vec::new();
    let push = |verts: VertexList, value: f64, out: &mut Vec<Simplex>| -> Result<(), FiltrationError> {
        if out.len() >= cell_budget {
            return Err(FiltrationError::CellBudgetExceeded {
                enumerated: out.len(),
                budget: cell_budget,
            });
        }
        out.push(Simplex { vertices: verts, value });
        Ok(())
    };

    for v in 0..n as u32 {
        push(VertexList::from_slice(&[v]), 0.0, &mut simplices)?;
    }

    if dimension_cap >= 1 {
        let mut clique = VertexList::new();
        for u in 0..n as u32 {
            let forward: Vec<u32> = dist_adj[u as usize]
                .iter()
                .map(|&(v, _)| v)
                .filter(|&v| v > u)
                .collect();
            if forward.is_empty() {
                continue;
            }
            clique.clear();
            clique.push(u);
            extend_clique(&dist_adj, &mut clique, 0.0, &forward, dimension_cap, cell_budget, &mut simplices)?;
        }
    }

    simplices.sort_unstable_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then_with(|| a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });

    let mut level_values: Vec<f64> = simplices.iter().map(|s| s.value).collect();
    level_values.dedup();

    let mut hash = Fnv1a::new();
    hash.write_u64(n as u64);
    hash.write_u64(dimension_cap as u64);
    for s in &simplices {
        hash.write_u32(s.vertices.len() as u32);
        hash.write_u64(s.value.to_bits());
        for &v in &s.vertices {
            hash.write_u32(v);
        }
    }

    Ok(FlagFiltration {
        simplices,
        dimension_cap,
        node_count: n,
        level_values,
        fingerprint: hash.finish(),
    })
}

/// Distance between adjacent `u` and `x` via binary search; callers only
/// ask for pairs known to be edges.
fn edge_distance(dist_adj: &[Vec<(u32, f64)>], u: u32, x: u32) -> f64 {
    let list = &dist_adj[u as usize];
    let i = list
        .binary_search_by_key(&x, |&(v, _)| v)
        .expect("candidate vertices are adjacent to every clique member");
    list[i].1
}

fn extend_clique(
    dist_adj: &[Vec<(u32, f64)>],
    clique: &mut VertexList,
    value: f64,
    candidates: &[u32],
    dimension_cap: usize,
    cell_budget: usize,
    out: &mut Vec<Simplex>,
) -> Result<(), FiltrationError> {
    for (i, &x) in candidates.iter().enumerate() {
        let mut extended_value = value;
        for &u in clique.iter() {
            let d = edge_distance(dist_adj, u, x);
            if d > extended_value {
                extended_value = d;
            }
        }
        clique.push(x);
        if out.len() >= cell_budget {
            clique.pop();
            return Err(FiltrationError::CellBudgetExceeded {
                enumerated: out.len(),
                budget: cell_budget,
            });
        }
        out.push(Simplex {
            vertices: clique.clone(),
            value: extended_value,
        });
        if clique.len() <= dimension_cap {
            // candidates above x that stay adjacent to the whole clique:
            // sorted intersection of the remaining candidates with N(x).
            let next = intersect_sorted(&candidates[i + 1..], &dist_adj[x as usize]);
            if !next.is_empty() {
                extend_clique(dist_adj, clique, extended_value, &next, dimension_cap, cell_budget, out)?;
            }
        }
        clique.pop();
    }
    Ok(())
}

fn intersect_sorted(tail: &[u32], neighbors: &[(u32, f64)]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < tail.len() && j < neighbors.len() {
        match tail[i].cmp(&neighbors[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(tail[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
