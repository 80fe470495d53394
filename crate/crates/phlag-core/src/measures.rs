//! Classical summary measures of an unweighted view of the graph.
//!
//! Weights count co-occurrences rather than lengths, so every measure
//! here treats edges as unweighted: hop distances for efficiency, plain
//! degrees for density and assortativity, link counts for clustering.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::graph::WeightedGraph;
use crate::stats;

/// Summary measures of one network.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureVector {
    /// Nodes, including isolates.
    pub node_count: usize,
    /// Distinct undirected edges.
    pub edge_count: usize,
    /// `2m / (n(n−1))`; 0 for `n ≤ 1`.
    pub density: f64,
    /// Mean local clustering coefficient over all nodes (degree < 2
    /// contributes 0); 0 for the empty graph.
    pub average_clustering: f64,
    /// Mean of `1/d_hop(u, v)` over ordered distinct pairs, with
    /// `1/∞ = 0` for disconnected pairs; 0 for `n ≤ 1`.
    pub global_efficiency: f64,
    /// Pearson correlation of endpoint degrees over both orientations of
    /// every edge; `None` when degenerate (no edges or constant degrees).
    pub degree_assortativity: Option<f64>,
    /// Edges whose removal would disconnect their component.
    pub bridge_count: usize,
    /// Nodes of degree 0.
    pub isolate_count: usize,
}

/// Computes all [`MeasureVector`] entries for one graph.
pub fn network_measures(g: &WeightedGraph) -> MeasureVector {
    let n = g.node_count();
    let m = g.edge_count();
    let adjacency: Vec<Vec<u32>> = g
        .adjacency()
        .into_iter()
        .map(|list| list.into_iter().map(|(v, _)| v).collect())
        .collect();

    let density = if n <= 1 {
        0.0
    } else {
        2.0 * m as f64 / (n as f64 * (n as f64 - 1.0))
    };

    MeasureVector {
        node_count: n,
        edge_count: m,
        density,
        average_clustering: average_clustering(&adjacency),
        global_efficiency: global_efficiency(&adjacency),
        degree_assortativity: degree_assortativity(g, &adjacency),
        bridge_count: count_bridges(&adjacency),
        isolate_count: adjacency.iter().filter(|list| list.is_empty()).count(),
    }
}

fn average_clustering(adjacency: &[Vec<u32>]) -> f64 {
    let n = adjacency.len();
    if n == 0 {
        return 0.0;
    }
    let mut marked = alloc::vec![false; n];
    let mut total = 0.0f64;
    for u in 0..n {
        let degree = adjacency[u].len();
        if degree < 2 {
            continue;
        }
        for &v in &adjacency[u] {
            marked[v as usize] = true;
        }
        // links among neighbors, each unordered pair once
        let mut links = 0usize;
        for &v in &adjacency[u] {
            for &w in &adjacency[v as usize] {
                if w > v && marked[w as usize] {
                    links += 1;
                }
            }
        }
        for &v in &adjacency[u] {
            marked[v as usize] = false;
        }
        total += 2.0 * links as f64 / (degree as f64 * (degree as f64 - 1.0));
    }
    total / n as f64
}

fn global_efficiency(adjacency: &[Vec<u32>]) -> f64 {
    let n = adjacency.len();
    if n <= 1 {
        return 0.0;
    }
    let mut sum = 0.0f64;
    let mut distance = alloc::vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    for source in 0..n {
        distance.iter_mut().for_each(|d| *d = u32::MAX);
        distance[source] = 0;
        queue.clear();
        queue.push_back(source as u32);
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u as usize] {
                if distance[v as usize] == u32::MAX {
                    distance[v as usize] = distance[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (v, &d) in distance.iter().enumerate() {
            if v != source && d != u32::MAX {
                sum += 1.0 / f64::from(d);
            }
        }
    }
    sum / (n as f64 * (n as f64 - 1.0))
}

fn degree_assortativity(g: &WeightedGraph, adjacency: &[Vec<u32>]) -> Option<f64> {
    if g.edge_count() == 0 {
        return None;
    }
    let mut xs = Vec::with_capacity(2 * g.edge_count());
    let mut ys = Vec::with_capacity(2 * g.edge_count());
    for e in g.edges() {
        let (du, dv) = (
            adjacency[e.source.index()].len() as f64,
            adjacency[e.target.index()].len() as f64,
        );
        xs.push(du);
        ys.push(dv);
        xs.push(dv);
        ys.push(du);
    }
    stats::pearson_correlation(&xs, &ys).ok()
}

/// Bridge count via one iterative depth-first pass (lowpoint rule: a tree
/// edge `(u, v)` is a bridge when no back edge from `v`'s subtree reaches
/// `u` or above).
fn count_bridges(adjacency: &[Vec<u32>]) -> usize {
    let n = adjacency.len();
    const UNVISITED: u32 = u32::MAX;
    let mut disc = alloc::vec![UNVISITED; n];
    let mut low = alloc::vec![0u32; n];
    let mut timer = 0u32;
    let mut bridges = 0usize;
    // (node, parent, next neighbor position)
    let mut stack: Vec<(u32, u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if disc[root as usize] != UNVISITED {
            continue;
        }
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        stack.push((root, UNVISITED, 0));
        while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
            if *next < adjacency[u as usize].len() {
                let v = adjacency[u as usize][*next];
                *next += 1;
                if disc[v as usize] == UNVISITED {
                    disc[v as usize] = timer;
                    low[v as usize] = timer;
                    timer += 1;
                    stack.push((v, u, 0));
                } else if v != parent {
                    low[u as usize] = low[u as usize].min(disc[v as usize]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                    if low[u as usize] > disc[p as usize] {
                        bridges += 1;
                    }
                }
            }
        }
    }
    bridges
}
