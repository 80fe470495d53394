//! Persistent homology of weighted co-occurrence networks.
//!
//! The pipeline implemented here turns two-mode activity records (works
//! tagged with classification codes and author lists) into weighted
//! one-mode networks, filters those networks into flag (clique) complexes,
//! and reduces the resulting boundary matrices over Z₂ to obtain
//! persistence diagrams and Betti profiles.
//!
//! Edge weights count co-occurrences, so strongly associated node pairs are
//! *close*: each edge enters the filtration at the inverse of its weight,
//! every vertex is present from value `0`, and a higher-dimensional simplex
//! appears when its last edge does (the maximum inverse weight over its
//! edges). This is exactly the Vietoris–Rips filtration of the finite
//! pseudo-metric `d(u, v) = 1 / w(u, v)` with `d = ∞` for non-adjacent
//! pairs.
//!
//! The crate is `no_std` + `alloc` so the algorithmic core stays portable;
//! IO, file formats, and orchestration live in the companion CLI crate.
//!
//! Module map:
//! - [`graph`]: node interning, weighted graphs, inverse-weight distances.
//! - [`records`]: two-mode records and knowledge/collaboration projections.
//! - [`filtration`]: ordered clique enumeration into a flag filtration.
//! - [`reduction`]: boundary matrices and Z₂ column reduction (with a
//!   naive reference reducer for cross-checking).
//! - [`diagram`]: persistence diagrams and Betti/Euler profiles.
//! - [`distance`]: bottleneck and 2-Wasserstein diagram distances.
//! - [`nullmodel`]: seeded ER / BA / WS random-graph baselines.
//! - [`measures`]: classical network summary statistics.
//! - [`stats`]: one-sample t-tests and rank correlations.

#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod diagram;
pub mod distance;
pub mod filtration;
pub mod graph;
mod matching;
pub mod measures;
pub mod nullmodel;
pub mod records;
pub mod reduction;
pub mod stats;

pub use diagram::{betti_profile, diagram_from_reduction, BettiProfile, PersistenceDiagram, PersistencePoint};
pub use distance::{
    bottleneck_distance, brute_force_matching, mean_pairwise_distance, wasserstein_distance, DiagramMetric,
    MetricError, PairwiseSummary,
};
pub use filtration::{
    enumerate_flag_complex, enumerate_flag_complex_with_budget, FiltrationError, FlagFiltration, Simplex,
    DEFAULT_CELL_BUDGET, DEFAULT_DIMENSION_CAP,
};
pub use graph::{weight_to_distance, Edge, GraphError, NodeId, SymbolTable, WeightedGraph};
pub use measures::{network_measures, MeasureVector};
pub use nullmodel::{generate_ba, generate_er, generate_ws, NullModelError, RandomModel, RandomModelSpec};
pub use records::{
    build_collaboration_network, build_knowledge_network, project_two_mode, Granularity, NetworkError,
    NetworkKind, NetworkSpec, PublicationRecord,
};
pub use reduction::{naive_reduce, reduce, BoundaryMatrix, ReductionError, ReductionResult, DEFAULT_HOMOLOGY_CAP};
pub use stats::{
    betti_null_test, pearson_correlation, spearman_correlation, student_t_two_tailed_p, StatsError, TTestResult,
};

/// Crate version, recorded in run manifests for provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Deterministic FNV-1a 64-bit content hash, used to fingerprint
/// filtrations and diagrams so downstream artifacts can be tied back to
/// their source complex.
pub(crate) struct Fnv1a(u64);

impl Fnv1a {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;

    pub(crate) fn new() -> Self {
        Fnv1a(Self::OFFSET)
    }

    pub(crate) fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(Self::PRIME);
        }
    }

    pub(crate) fn write_u32(&mut self, v: u32) {
        self.write(&v.to_le_bytes());
    }

    pub(crate) fn write_u64(&mut self, v: u64) {
        self.write(&v.to_le_bytes());
    }

    pub(crate) fn finish(&self) -> u64 {
        self.0
    }
}
