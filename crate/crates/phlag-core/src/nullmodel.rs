//! Seeded random-graph null models matched to a reference graph's node
//! and edge counts.
//!
//! Three families are provided, all with unit edge weights:
//!
//! - Erdős–Rényi `G(n, m)`: a uniform sample of exactly `m` distinct
//!   edges (Floyd's subset sampling over pair ranks).
//! - Barabási–Albert preferential attachment with attachment parameter
//!   `a = max(1, round(m/n))`; the final node's attachment count absorbs
//!   the residual so the edge total matches exactly.
//! - Watts–Strogatz ring of even degree `k` (nearest even to `2m/n`)
//!   with per-edge rewiring; the realized count `n·k/2` may differ from
//!   the target, and callers report that delta.
//!
//! All generators draw from ChaCha12 seeded per call, so identical
//! `(parameters, seed)` reproduce identical graphs on every platform.

use alloc::vec::Vec;

use hashbrown::HashSet;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rustc_hash::FxBuildHasher;
use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph};

/// Null-model family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomModel {
    /// Erdős–Rényi `G(n, m)`.
    ErdosRenyi,
    /// Barabási–Albert preferential attachment.
    BarabasiAlbert,
    /// Watts–Strogatz rewired ring lattice.
    WattsStrogatz,
}

impl core::fmt::Display for RandomModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            RandomModel::ErdosRenyi => "er",
            RandomModel::BarabasiAlbert => "ba",
            RandomModel::WattsStrogatz => "ws",
        })
    }
}

/// Errors from null-model generation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NullModelError {
    /// The requested edge count cannot be realized by the model at this
    /// node count.
    #[error("{model} model cannot realize {target_edge_count} edges on {node_count} nodes")]
    InfeasibleEdgeCount {
        /// Model that failed.
        model: RandomModel,
        /// Node count requested.
        node_count: usize,
        /// Edge count requested.
        target_edge_count: usize,
    },
    /// Rewiring probability outside `[0, 1]`.
    #[error("rewiring probability {value} outside [0, 1]")]
    InvalidRewireProbability {
        /// The rejected value.
        value: f64,
    },
    /// A model spec listed no seeds.
    #[error("random model spec needs at least one seed")]
    NoSeeds,
    /// Graph assembly failed (internal; indicates a generator bug).
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A full null-ensemble request: model, matched counts, seeds, and (for
/// WS) the rewiring-probability grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomModelSpec {
    /// Model family.
    pub model: RandomModel,
    /// Node count to match.
    pub node_count: usize,
    /// Edge count to match.
    pub target_edge_count: usize,
    /// RNG seeds, one graph per seed (per parameter for WS).
    pub seeds: Vec<u64>,
    /// WS rewiring probabilities; ignored by ER and BA.
    pub ws_rewire_probs: Vec<f64>,
}

impl RandomModelSpec {
    /// Spec matched to a reference graph, with the default 10 seeds and
    /// 10-point rewiring grid.
    pub fn matched(model: RandomModel, reference: &WeightedGraph) -> Self {
        RandomModelSpec {
            model,
            node_count: reference.node_count(),
            target_edge_count: reference.edge_count(),
            seeds: Self::default_seeds(),
            ws_rewire_probs: Self::default_rewire_probs(),
        }
    }

    /// Seeds `0..10`.
    pub fn default_seeds() -> Vec<u64> {
        (0..10).collect()
    }

    /// Ten linearly spaced rewiring probabilities spanning `[0.01, 0.99]`.
    pub fn default_rewire_probs() -> Vec<f64> {
        linspace(0.01, 0.99, 10)
    }

    /// The `(parameter, seed)` grid this spec expands to: one entry per
    /// seed for ER/BA, the rewiring grid × seeds for WS.
    pub fn instances(&self) -> Vec<(Option<f64>, u64)> {
        match self.model {
            RandomModel::ErdosRenyi | RandomModel::BarabasiAlbert => {
                self.seeds.iter().map(|&s| (None, s)).collect()
            }
            RandomModel::WattsStrogatz => {
                let mut out = Vec::with_capacity(self.ws_rewire_probs.len() * self.seeds.len());
                for &p in &self.ws_rewire_probs {
                    for &s in &self.seeds {
                        out.push((Some(p), s));
                    }
                }
                out
            }
        }
    }

    /// Generates one instance of the ensemble.
    pub fn generate(&self, param: Option<f64>, seed: u64) -> Result<WeightedGraph, NullModelError> {
        if self.seeds.is_empty() {
            return Err(NullModelError::NoSeeds);
        }
        match self.model {
            RandomModel::ErdosRenyi => generate_er(self.node_count, self.target_edge_count, seed),
            RandomModel::BarabasiAlbert => generate_ba(self.node_count, self.target_edge_count, seed),
            RandomModel::WattsStrogatz => {
                generate_ws(self.node_count, self.target_edge_count, param.unwrap_or(0.0), seed)
            }
        }
    }
}

/// `count` evenly spaced values from `lo` to `hi` inclusive.
pub(crate) fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Rank of pair `(u, v)`, `u < v`, in the row-major upper triangle.
fn pair_rank(n: u64, u: u64, v: u64) -> u64 {
    u * (n - 1) - u * (u.saturating_sub(1)) / 2 + (v - u - 1)
}

/// Inverse of [`pair_rank`]: binary search the row, then offset.
fn pair_unrank(n: u64, rank: u64) -> (u32, u32) {
    let (mut lo, mut hi) = (0u64, n - 1);
    // largest u with pair_rank(n, u, u+1) ≤ rank
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if pair_rank(n, mid, mid + 1) <= rank {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let u = lo;
    let v = u + 1 + (rank - pair_rank(n, u, u + 1));
    (u as u32, v as u32)
}

/// Uniform `G(n, m)`: exactly `m` distinct edges, unit weights.
pub fn generate_er(n: usize, m: usize, seed: u64) -> Result<WeightedGraph, NullModelError> {
    let max = pair_count(n);
    if m as u64 > max {
        return Err(NullModelError::InfeasibleEdgeCount {
            model: RandomModel::ErdosRenyi,
            node_count: n,
            target_edge_count: m,
        });
    }
    // Floyd's algorithm: a uniform m-subset of pair ranks.
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut chosen: HashSet<u64, FxBuildHasher> = HashSet::with_capacity_and_hasher(m, FxBuildHasher);
    for j in (max - m as u64)..max {
        let r = rng.random_range(0..=j);
        if !chosen.insert(r) {
            chosen.insert(j);
        }
    }
    let mut edges: Vec<(u32, u32, f64)> = chosen
        .into_iter()
        .map(|r| {
            let (u, v) = pair_unrank(n as u64, r);
            (u, v, 1.0)
        })
        .collect();
    edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
    Ok(WeightedGraph::from_indexed_edges(n as u32, edges)?)
}

/// Barabási–Albert preferential attachment with the edge total matched
/// exactly: attachment parameter `a = max(1, round(m_total/n))`, and the
/// residual added to (or removed from) the trailing nodes' attachment
/// counts.
pub fn generate_ba(n: usize, m_total: usize, seed: u64) -> Result<WeightedGraph, NullModelError> {
    let infeasible = || NullModelError::InfeasibleEdgeCount {
        model: RandomModel::BarabasiAlbert,
        node_count: n,
        target_edge_count: m_total,
    };
    if n < 2 {
        return if m_total == 0 {
            Ok(WeightedGraph::from_indexed_edges(n as u32, [])?)
        } else {
            Err(infeasible())
        };
    }
    let a = {
        let rounded = libm::round(m_total as f64 / n as f64) as usize;
        rounded.max(1)
    };
    if a >= n {
        return Err(infeasible());
    }
    // Node v ∈ a..n attaches `a` edges in the plain process; adjust the
    // trailing counts so the total hits m_total exactly.
    let base = a * (n - a);
    let mut counts: Vec<usize> = (0..n).map(|v| if v >= a { a } else { 0 }).collect();
    if m_total > base {
        // Node v can attach to each of the v earlier-born nodes at most
        // once, so its count may grow from `a` to `v`; spread the
        // residual over the latest nodes, which have the most room.
        let mut boost = m_total - base;
        for v in (a + 1..n).rev() {
            if boost == 0 {
                break;
            }
            let take = (v - a).min(boost);
            counts[v] += take;
            boost -= take;
        }
        if boost > 0 {
            return Err(infeasible());
        }
    } else {
        let mut deficit = base - m_total;
        for v in (a..n).rev() {
            if deficit == 0 {
                break;
            }
            let take = counts[v].min(deficit);
            counts[v] -= take;
            deficit -= take;
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32, f64)> = Vec::with_capacity(m_total);
    // Attachment pool: every edge contributes both endpoints, so a node's
    // multiplicity is its degree.
    let mut pool: Vec<u32> = Vec::with_capacity(2 * m_total);
    let mut degree: Vec<u32> = alloc::vec![0; n];
    let mut reachable = 0usize; // nodes with degree > 0
    let mut targets: Vec<u32> = Vec::new();
    for v in a..n {
        let want = counts[v];
        if want == 0 {
            continue;
        }
        targets.clear();
        if pool.is_empty() {
            // first attaching node: deterministic seed clique targets
            targets.extend(0..want as u32);
        } else {
            if want > reachable {
                return Err(infeasible());
            }
            while targets.len() < want {
                let pick = pool[rng.random_range(0..pool.len())];
                if !targets.contains(&pick) {
                    targets.push(pick);
                }
            }
        }
        for &t in &targets {
            edges.push((t, v as u32, 1.0));
            for node in [t, v as u32] {
                if degree[node as usize] == 0 {
                    reachable += 1;
                }
                degree[node as usize] += 1;
            }
            pool.push(t);
        }
        pool.extend(core::iter::repeat_n(v as u32, want));
    }
    debug_assert_eq!(edges.len(), m_total);
    Ok(WeightedGraph::from_indexed_edges(n as u32, edges)?)
}

/// Watts–Strogatz: ring lattice of even degree `k` (nearest even integer
/// to `2·m_total/n`, at least 2), each ring edge rewired to a uniform
/// endpoint with probability `rewire_p`, never creating self-loops or
/// duplicate edges. The result always has exactly `n·k/2` edges; callers
/// compare that against `m_total` and report the difference.
pub fn generate_ws(n: usize, m_total: usize, rewire_p: f64, seed: u64) -> Result<WeightedGraph, NullModelError> {
    if !(0.0..=1.0).contains(&rewire_p) {
        return Err(NullModelError::InvalidRewireProbability { value: rewire_p });
    }
    let infeasible = || NullModelError::InfeasibleEdgeCount {
        model: RandomModel::WattsStrogatz,
        node_count: n,
        target_edge_count: m_total,
    };
    if n == 0 {
        return if m_total == 0 {
            Ok(WeightedGraph::from_indexed_edges(0, [])?)
        } else {
            Err(infeasible())
        };
    }
    let half_k = libm::round(m_total as f64 / n as f64) as usize;
    let k = half_k * 2;
    if k < 2 || k >= n {
        return Err(infeasible());
    }

    let mut present: HashSet<(u32, u32), FxBuildHasher> = HashSet::default();
    let mut degree: Vec<usize> = alloc::vec![0; n];
    let normalize = |u: u32, v: u32| if u < v { (u, v) } else { (v, u) };
    for j in 1..=half_k {
        for u in 0..n {
            let v = ((u + j) % n) as u32;
            present.insert(normalize(u as u32, v));
            degree[u] += 1;
            degree[v as usize] += 1;
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for j in 1..=half_k {
        for u in 0..n {
            if rng.random::<f64>() >= rewire_p {
                continue;
            }
            // a saturated endpoint has nowhere new to go
            if degree[u] >= n - 1 {
                continue;
            }
            let old = normalize(u as u32, ((u + j) % n) as u32);
            if !present.contains(&old) {
                // this ring slot was already rewired away earlier
                continue;
            }
            let mut w = rng.random_range(0..n) as u32;
            while w as usize == u || present.contains(&normalize(u as u32, w)) {
                w = rng.random_range(0..n) as u32;
            }
            present.remove(&old);
            degree[old.0 as usize] -= 1;
            degree[old.1 as usize] -= 1;
            present.insert(normalize(u as u32, w));
            degree[u] += 1;
            degree[w as usize] += 1;
        }
    }

    let mut edges: Vec<(u32, u32, f64)> = present.into_iter().map(|(u, v)| (u, v, 1.0)).collect();
    edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
    debug_assert_eq!(edges.len(), n * half_k);
    Ok(WeightedGraph::from_indexed_edges(n as u32, edges)?)
}
