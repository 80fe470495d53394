//! Persistence diagrams and Betti profiles from reduction output.
//!
//! Each reduction pair `(i, j)` becomes a point `(dim σ_i, value σ_i,
//! value σ_j)`; each essential cell becomes a point with infinite death.
//! Zero-persistence points (`birth == death` exactly) carry no
//! topological signal and are dropped by default — they also contribute
//! nothing to optimal diagram matchings, where they ride the diagonal.
//!
//! Note that a pair born at 0 and dying at the first edge level is *not*
//! zero-persistence: components born with the vertices genuinely live
//! until edges merge them.

use alloc::vec::Vec;

use crate::filtration::FlagFiltration;
use crate::reduction::ReductionResult;
use crate::Fnv1a;

/// One feature: dimension, birth threshold, death threshold (∞ for
/// essential classes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePoint {
    /// Homology dimension of the feature.
    pub dimension: usize,
    /// Threshold at which the feature appears.
    pub birth: f64,
    /// Threshold at which it disappears; `f64::INFINITY` if never.
    pub death: f64,
}

impl PersistencePoint {
    /// Lifetime `death − birth` (infinite for essential classes).
    pub fn lifetime(&self) -> f64 {
        self.death - self.birth
    }

    /// True for never-dying (essential) features.
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }
}

/// Multiset of persistence points, canonically ordered by
/// `(dimension, birth, death)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    points: Vec<PersistencePoint>,
    max_dimension_computed: usize,
    graph_fingerprint: u64,
}

impl PersistenceDiagram {
    /// Builds a diagram from raw points (sorted canonically on entry) and
    /// fingerprints the content itself. Intended for synthetic diagrams
    /// in tests and for distance-only workflows.
    pub fn from_points(mut points: Vec<PersistencePoint>, max_dimension_computed: usize) -> Self {
        sort_points(&mut points);
        let mut hash = Fnv1a::new();
        hash.write_u64(max_dimension_computed as u64);
        for p in &points {
            hash.write_u64(p.dimension as u64);
            hash.write_u64(p.birth.to_bits());
            hash.write_u64(p.death.to_bits());
        }
        PersistenceDiagram {
            points,
            max_dimension_computed,
            graph_fingerprint: hash.finish(),
        }
    }

    /// All points in canonical order.
    pub fn points(&self) -> &[PersistencePoint] {
        &self.points
    }

    /// Highest homology dimension this diagram was computed to. Absence
    /// of points of some dimension ≤ this cap means β_k honestly is 0,
    /// not "not computed".
    pub fn max_dimension_computed(&self) -> usize {
        self.max_dimension_computed
    }

    /// Content hash of the source filtration (or of the points themselves
    /// for synthetic diagrams).
    pub fn graph_fingerprint(&self) -> u64 {
        self.graph_fingerprint
    }

    /// Points of one dimension, in canonical order.
    pub fn points_in_dimension(&self, dimension: usize) -> impl Iterator<Item = &PersistencePoint> {
        self.points.iter().filter(move |p| p.dimension == dimension)
    }

    /// Number of essential classes of one dimension (= β_k at ε = ∞).
    pub fn essential_count(&self, dimension: usize) -> usize {
        self.points_in_dimension(dimension).filter(|p| p.is_essential()).count()
    }
}

fn sort_points(points: &mut [PersistencePoint]) {
    points.sort_unstable_by(|a, b| {
        a.dimension
            .cmp(&b.dimension)
            .then_with(|| a.birth.total_cmp(&b.birth))
            .then_with(|| a.death.total_cmp(&b.death))
    });
}

/// Betti numbers β_0..β_cap and cell counts Δ_0..Δ_{cap+1} of one
/// network's flag complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiProfile {
    betti: Vec<u64>,
    cells: Vec<u64>,
}

impl BettiProfile {
    /// Builds a profile from explicit counts (β_0 first, Δ_0 first);
    /// useful when profiles come from storage rather than a reduction.
    pub fn new(betti: Vec<u64>, cells: Vec<u64>) -> Self {
        Self { betti, cells }
    }

    /// β_k, or 0 beyond the computed cap.
    pub fn betti(&self, k: usize) -> u64 {
        self.betti.get(k).copied().unwrap_or(0)
    }

    /// Δ_k, or 0 beyond the recorded range.
    pub fn cells(&self, k: usize) -> u64 {
        self.cells.get(k).copied().unwrap_or(0)
    }

    /// All Betti numbers, β_0 first.
    pub fn betti_numbers(&self) -> &[u64] {
        &self.betti
    }

    /// All cell counts, Δ_0 first (one dimension above the Betti range).
    pub fn cell_counts(&self) -> &[u64] {
        &self.cells
    }

    /// Σ (−1)^k Δ_k over the recorded counts.
    pub fn euler_from_cells(&self) -> i64 {
        alternating_sum(&self.cells)
    }

    /// Σ (−1)^k β_k over the recorded Betti numbers.
    pub fn euler_from_betti(&self) -> i64 {
        alternating_sum(&self.betti)
    }
}

fn alternating_sum(values: &[u64]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Converts reduction output into a persistence diagram.
///
/// With `drop_zero_persistence` (the default used by the pipeline),
/// pairs whose birth and death values are exactly equal are omitted.
pub fn diagram_from_reduction(
    f: &FlagFiltration,
    r: &ReductionResult,
    drop_zero_persistence: bool,
) -> PersistenceDiagram {
    let mut points = Vec::with_capacity(r.pairs().len() + r.essential().len());
    for &(b, d) in r.pairs() {
        let (sb, sd) = (&f.simplices()[b as usize], &f.simplices()[d as usize]);
        let (birth, death) = (sb.filtration_value(), sd.filtration_value());
        if drop_zero_persistence && birth == death {
            continue;
        }
        points.push(PersistencePoint {
            dimension: sb.dimension(),
            birth,
            death,
        });
    }
    for &j in r.essential() {
        let s = &f.simplices()[j as usize];
        points.push(PersistencePoint {
            dimension: s.dimension(),
            birth: s.filtration_value(),
            death: f64::INFINITY,
        });
    }
    sort_points(&mut points);
    PersistenceDiagram {
        points,
        max_dimension_computed: r.homology_cap(),
        graph_fingerprint: f.fingerprint(),
    }
}

/// Summarizes a reduction as Betti numbers plus the filtration's cell
/// counts, padded/truncated to the homology cap (β_0..β_cap, Δ_0..Δ_{cap+1}).
pub fn betti_profile(f: &FlagFiltration, r: &ReductionResult) -> BettiProfile {
    let cap = r.homology_cap();
    let mut betti = alloc::vec![0u64; cap + 1];
    for &j in r.essential() {
        let d = f.simplices()[j as usize].dimension();
        if d <= cap {
            betti[d] += 1;
        }
    }
    let mut cells = f.cell_counts();
    cells.resize(cap + 2, 0);
    BettiProfile { betti, cells }
}
