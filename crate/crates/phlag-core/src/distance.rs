//! Optimal-transport distances between persistence diagrams.
//!
//! Both metrics compare the dimension-k points of two diagrams under the
//! standard diagonal augmentation: each side is padded with the diagonal
//! projections of the other side's points, so unmatched features may pay
//! their distance to the diagonal instead of a partner. Bottleneck takes
//! the max ℓ∞ displacement of the optimal matching (found by binary
//! search over candidate costs with bipartite feasibility tests);
//! Wasserstein takes the root of the minimal sum of squared ℓ₂
//! displacements (an exact assignment problem).
//!
//! Essential (infinite-death) points cannot trade against the diagonal:
//! they are matched separately by sorted birth within the dimension, and
//! diagrams with unequal essential counts are at distance `+∞` — such
//! pairs are excluded from means and counted instead.

use alloc::vec::Vec;

use thiserror::Error;

use crate::diagram::PersistenceDiagram;
use crate::matching::{max_bipartite_matching, min_cost_assignment};

/// Ceiling on combined finite points for the exhaustive reference
/// matcher.
const BRUTE_FORCE_LIMIT: usize = 8;

/// Which diagram metric to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramMetric {
    /// Max ℓ∞ displacement (p = ∞).
    Bottleneck,
    /// Root-sum-of-squares ℓ₂ displacement (p = 2).
    Wasserstein,
}

impl core::fmt::Display for DiagramMetric {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            DiagramMetric::Bottleneck => "bottleneck",
            DiagramMetric::Wasserstein => "wasserstein",
        })
    }
}

/// Errors from distance computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    /// A diagram was not computed up to the requested dimension.
    #[error("dimension {requested} requested but diagram was computed to {available}")]
    DimensionUnavailable {
        /// Dimension asked for.
        requested: usize,
        /// Highest dimension available.
        available: usize,
    },
    /// The exhaustive matcher refuses problems past its guard.
    #[error("brute-force matcher is limited to {limit} combined finite points, got {points}")]
    OracleTooLarge {
        /// Combined finite point count.
        points: usize,
        /// The fixed ceiling.
        limit: usize,
    },
    /// Mean pairwise distance needs at least two diagrams.
    #[error("need at least 2 diagrams, got {count}")]
    TooFewDiagrams {
        /// Diagrams supplied.
        count: usize,
    },
}

/// Mean pairwise distance over a set of diagrams, with infinite pairs
/// excluded from the mean but counted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairwiseSummary {
    /// Mean over finite pairs; `None` when every pair was infinite.
    pub mean: Option<f64>,
    /// Number of finite unordered pairs.
    pub finite_pairs: usize,
    /// Number of pairs at distance `+∞` (mismatched essential counts).
    pub infinite_pairs: usize,
}

fn check_dimension(p: &PersistenceDiagram, dimension: usize) -> Result<(), MetricError> {
    if dimension > p.max_dimension_computed() {
        Err(MetricError::DimensionUnavailable {
            requested: dimension,
            available: p.max_dimension_computed(),
        })
    } else {
        Ok(())
    }
}

/// Finite points `(birth, death)` and essential births of one dimension.
fn split_dimension(p: &PersistenceDiagram, dimension: usize) -> (Vec<(f64, f64)>, Vec<f64>) {
    let mut finite = Vec::new();
    let mut essential = Vec::new();
    for pt in p.points_in_dimension(dimension) {
        if pt.is_essential() {
            essential.push(pt.birth);
        } else {
            finite.push((pt.birth, pt.death));
        }
    }
    essential.sort_unstable_by(f64::total_cmp);
    (finite, essential)
}

/// Matches equinumerous essential births in sorted order and returns the
/// per-pair absolute birth differences. Sorted (monotone) matching is
/// optimal for both the max and the sum-of-squares objective.
fn essential_differences(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).collect()
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    let db = (a.0 - b.0).abs();
    let dd = (a.1 - b.1).abs();
    if db > dd {
        db
    } else {
        dd
    }
}

fn persistence(p: (f64, f64)) -> f64 {
    p.1 - p.0
}

/// Bottleneck distance between the dimension-k points of two diagrams.
pub fn bottleneck_distance(
    p1: &PersistenceDiagram,
    p2: &PersistenceDiagram,
    dimension: usize,
) -> Result<f64, MetricError> {
    check_dimension(p1, dimension)?;
    check_dimension(p2, dimension)?;
    let (a, a_inf) = split_dimension(p1, dimension);
    let (b, b_inf) = split_dimension(p2, dimension);
    if a_inf.len() != b_inf.len() {
        return Ok(f64::INFINITY);
    }
    let essential_part = essential_differences(&a_inf, &b_inf)
        .into_iter()
        .fold(0.0f64, f64::max);
    Ok(essential_part.max(bottleneck_finite(&a, &b)))
}

fn bottleneck_finite(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let n = a.len() + b.len();
    if n == 0 {
        return 0.0;
    }
    // Candidate optimal costs: every point-to-point ℓ∞ distance and every
    // point-to-diagonal cost (half the persistence); 0 for identical
    // diagrams.
    let mut candidates: Vec<f64> = Vec::with_capacity(a.len() * b.len() + n + 1);
    candidates.push(0.0);
    for &x in a {
        candidates.push(persistence(x) / 2.0);
        for &y in b {
            candidates.push(linf(x, y));
        }
    }
    for &y in b {
        candidates.push(persistence(y) / 2.0);
    }
    candidates.sort_unstable_by(f64::total_cmp);
    candidates.dedup();

    // Smallest candidate admitting a perfect matching in the augmented
    // bipartite graph; the largest always does.
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if bottleneck_feasible(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Can every point be matched (to a partner or its diagonal) with ℓ∞
/// cost ≤ `threshold`? Left side: A's points then B's diagonal clones;
/// right side: B's points then A's diagonal clones.
fn bottleneck_feasible(a: &[(f64, f64)], b: &[(f64, f64)], threshold: f64) -> bool {
    let n = a.len() + b.len();
    let mut adjacency: Vec<Vec<u32>> = Vec::with_capacity(n);
    for &x in a {
        let mut row = Vec::new();
        for (j, &y) in b.iter().enumerate() {
            if linf(x, y) <= threshold {
                row.push(j as u32);
            }
        }
        if persistence(x) / 2.0 <= threshold {
            row.extend(b.len() as u32..n as u32);
        }
        adjacency.push(row);
    }
    for _ in 0..b.len() {
        let mut row: Vec<u32> = (b.len() as u32..n as u32).collect();
        for (j, &y) in b.iter().enumerate() {
            if persistence(y) / 2.0 <= threshold {
                row.push(j as u32);
            }
        }
        adjacency.push(row);
    }
    max_bipartite_matching(n, n, &adjacency) == n
}

/// 2-Wasserstein distance between the dimension-k points of two diagrams.
pub fn wasserstein_distance(
    p1: &PersistenceDiagram,
    p2: &PersistenceDiagram,
    dimension: usize,
) -> Result<f64, MetricError> {
    check_dimension(p1, dimension)?;
    check_dimension(p2, dimension)?;
    let (a, a_inf) = split_dimension(p1, dimension);
    let (b, b_inf) = split_dimension(p2, dimension);
    if a_inf.len() != b_inf.len() {
        return Ok(f64::INFINITY);
    }
    let essential_sq: f64 = essential_differences(&a_inf, &b_inf).iter().map(|d| d * d).sum();
    let n = a.len() + b.len();
    if n == 0 {
        return Ok(libm::sqrt(essential_sq));
    }
    let cost = augmented_squared_costs(&a, &b);
    let (total, _) = min_cost_assignment(n, &cost);
    Ok(libm::sqrt(total + essential_sq))
}

/// Row-major `n × n` matrix of squared ℓ₂ ground costs on the augmented
/// sides (A ∪ diag vs B ∪ diag). A point's diagonal projection sits at
/// ℓ₂ distance `persistence / √2`, i.e. squared cost `persistence² / 2`.
fn augmented_squared_costs(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<f64> {
    let n = a.len() + b.len();
    let mut cost = alloc::vec![0.0f64; n * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let (db, dd) = (x.0 - y.0, x.1 - y.1);
            cost[i * n + j] = db * db + dd * dd;
        }
        let diag = persistence(x) * persistence(x) / 2.0;
        for j in b.len()..n {
            cost[i * n + j] = diag;
        }
    }
    for i in a.len()..n {
        for (j, &y) in b.iter().enumerate() {
            cost[i * n + j] = persistence(y) * persistence(y) / 2.0;
        }
        // diagonal-to-diagonal stays 0
    }
    cost
}

/// Exhaustively enumerates all augmented matchings and returns the exact
/// optimum plus a witness: pairs `(left, right)` where indices `< |A|`
/// (resp. `< |B|`) are real points and the rest diagonal slots.
///
/// This is the reference both production metrics are checked against; it
/// shares no solver code with them.
pub fn brute_force_matching(
    p1: &PersistenceDiagram,
    p2: &PersistenceDiagram,
    dimension: usize,
    metric: DiagramMetric,
) -> Result<(f64, Vec<(usize, usize)>), MetricError> {
    check_dimension(p1, dimension)?;
    check_dimension(p2, dimension)?;
    let (a, a_inf) = split_dimension(p1, dimension);
    let (b, b_inf) = split_dimension(p2, dimension);
    if a.len() + b.len() > BRUTE_FORCE_LIMIT {
        return Err(MetricError::OracleTooLarge {
            points: a.len() + b.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if a_inf.len() != b_inf.len() {
        return Ok((f64::INFINITY, Vec::new()));
    }
    let essential_diffs = essential_differences(&a_inf, &b_inf);

    let n = a.len() + b.len();
    // ground cost of matching augmented left i to augmented right j
    let pair_cost = |i: usize, j: usize| -> f64 {
        match (i < a.len(), j < b.len()) {
            (true, true) => match metric {
                DiagramMetric::Bottleneck => linf(a[i], b[j]),
                DiagramMetric::Wasserstein => {
                    let (db, dd) = (a[i].0 - b[j].0, a[i].1 - b[j].1);
                    db * db + dd * dd
                }
            },
            (true, false) => match metric {
                DiagramMetric::Bottleneck => persistence(a[i]) / 2.0,
                DiagramMetric::Wasserstein => persistence(a[i]) * persistence(a[i]) / 2.0,
            },
            (false, true) => match metric {
                DiagramMetric::Bottleneck => persistence(b[j]) / 2.0,
                DiagramMetric::Wasserstein => persistence(b[j]) * persistence(b[j]) / 2.0,
            },
            (false, false) => 0.0,
        }
    };
    let objective = |perm: &[usize]| -> f64 {
        match metric {
            DiagramMetric::Bottleneck => perm
                .iter()
                .enumerate()
                .map(|(i, &j)| pair_cost(i, j))
                .fold(0.0f64, f64::max),
            DiagramMetric::Wasserstein => perm.iter().enumerate().map(|(i, &j)| pair_cost(i, j)).sum(),
        }
    };

    let mut perm: Vec<usize> = (0..n).collect();
    let mut best_cost = f64::INFINITY;
    let mut best_perm: Vec<usize> = perm.clone();
    permute(&mut perm, 0, &mut |candidate| {
        let c = objective(candidate);
        if c < best_cost {
            best_cost = c;
            best_perm = candidate.to_vec();
        }
    });
    if n == 0 {
        best_cost = 0.0;
        best_perm.clear();
    }

    let essential_part = match metric {
        DiagramMetric::Bottleneck => essential_diffs.into_iter().fold(0.0f64, f64::max),
        DiagramMetric::Wasserstein => essential_diffs.iter().map(|d| d * d).sum(),
    };
    let distance = match metric {
        DiagramMetric::Bottleneck => best_cost.max(essential_part),
        DiagramMetric::Wasserstein => libm::sqrt(best_cost + essential_part),
    };
    let witness = best_perm.into_iter().enumerate().collect();
    Ok((distance, witness))
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Mean pairwise distance over ≥ 2 diagrams at one dimension. Infinite
/// pairs (mismatched essential counts) are excluded from the mean and
/// reported in the summary.
pub fn mean_pairwise_distance(
    diagrams: &[PersistenceDiagram],
    dimension: usize,
    metric: DiagramMetric,
) -> Result<PairwiseSummary, MetricError> {
    if diagrams.len() < 2 {
        return Err(MetricError::TooFewDiagrams { count: diagrams.len() });
    }
    let mut sum = 0.0f64;
    let mut finite_pairs = 0usize;
    let mut infinite_pairs = 0usize;
    for i in 0..diagrams.len() {
        for j in i + 1..diagrams.len() {
            let d = match metric {
                DiagramMetric::Bottleneck => bottleneck_distance(&diagrams[i], &diagrams[j], dimension)?,
                DiagramMetric::Wasserstein => wasserstein_distance(&diagrams[i], &diagrams[j], dimension)?,
            };
            if d.is_finite() {
                sum += d;
                finite_pairs += 1;
            } else {
                infinite_pairs += 1;
            }
        }
    }
    Ok(PairwiseSummary {
        mean: (finite_pairs > 0).then(|| sum / finite_pairs as f64),
        finite_pairs,
        infinite_pairs,
    })
}
