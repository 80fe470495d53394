//! Z₂ boundary-matrix column reduction over a flag filtration.
//!
//! Columns are processed in filtration order; a column's pivot is its
//! largest facet index ("low"). When two columns share a pivot the later
//! one absorbs the earlier via Z₂ addition (symmetric difference of sorted
//! index lists) until its pivot is fresh or the column vanishes. A fresh
//! pivot records a (birth, death) pair; a vanished column is a birth.
//!
//! [`reduce`] applies the clearing (twist) optimization: dimensions are
//! processed top-down, and every column already identified as a birth by
//! the dimension above is skipped. [`naive_reduce`] is the deliberately
//! plain textbook reducer — ascending filtration order across all
//! dimensions, set-based columns, no optimizations — kept as an
//! independent cross-check; by the uniqueness of the persistence pairing
//! both must produce identical results.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use hashbrown::HashMap;
use rustc_hash::FxBuildHasher;
use thiserror::Error;

use crate::filtration::{FlagFiltration, VertexList};

/// Default highest homology dimension reported.
pub const DEFAULT_HOMOLOGY_CAP: usize = 3;

/// Cell-count ceiling for the naive reference reducer.
const NAIVE_CELL_LIMIT: usize = 20_000;

/// Sparse Z₂ boundary matrix in filtration order: column `j` holds the
/// ascending filtration indices of the facets of simplex `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    columns: Vec<VertexList>,
    dimensions: Vec<u8>,
}

impl BoundaryMatrix {
    /// Assembles the boundary matrix of a filtration by looking up each
    /// cell's facets in a vertex-list index.
    pub fn build(f: &FlagFiltration) -> Self {
        let mut index: HashMap<&[u32], u32, FxBuildHasher> = HashMap::with_capacity_and_hasher(f.len(), FxBuildHasher);
        for (i, s) in f.simplices().iter().enumerate() {
            index.insert(s.vertices(), i as u32);
        }
        let mut columns = Vec::with_capacity(f.len());
        let mut dimensions = Vec::with_capacity(f.len());
        let mut facet = Vec::new();
        for s in f.simplices() {
            dimensions.push(s.dimension() as u8);
            let mut column = VertexList::new();
            if s.dimension() > 0 {
                for skip in 0..s.vertices().len() {
                    facet.clear();
                    facet.extend(s.vertices().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    let fi = *index
                        .get(facet.as_slice())
                        .expect("flag filtrations are closed under taking facets");
                    column.push(fi);
                }
                column.sort_unstable();
            }
            columns.push(column);
        }
        BoundaryMatrix { columns, dimensions }
    }

    /// Number of columns (= cells).
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    /// True for an empty matrix.
    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Ascending facet indices of column `j`; empty for vertices.
    pub fn column(&self, j: usize) -> &[u32] {
        &self.columns[j]
    }

    /// Dimension of the cell behind column `j`.
    pub fn dimension(&self, j: usize) -> usize {
        self.dimensions[j] as usize
    }
}

/// Outcome of a reduction: persistence pairs and essential (unpaired)
/// cells, both as filtration indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pairs: Vec<(u32, u32)>,
    essential: Vec<u32>,
    homology_cap: usize,
}

impl ReductionResult {
    /// `(birth_index, death_index)` pairs, sorted by birth index. Births
    /// have dimension ≤ the homology cap; deaths are one dimension up.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Unpaired cell indices of dimension ≤ the homology cap, ascending;
    /// their dimension-k count is the Betti number β_k.
    pub fn essential(&self) -> &[u32] {
        &self.essential
    }

    /// Highest homology dimension this result covers.
    pub fn homology_cap(&self) -> usize {
        self.homology_cap
    }
}

/// Errors from reduction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    /// Killing k-cycles needs (k+1)-cells: the homology cap must stay
    /// below the filtration's dimension cap.
    #[error("homology cap {homology_cap} needs cells of dimension {}, but the filtration caps at {dimension_cap}", homology_cap + 1)]
    CapViolation {
        /// Requested homology cap.
        homology_cap: usize,
        /// Dimension cap of the filtration.
        dimension_cap: usize,
    },
    /// The naive reference reducer refuses large filtrations.
    #[error("naive reducer is limited to {limit} cells, got {cells}")]
    OracleTooLarge {
        /// Cells in the filtration.
        cells: usize,
        /// The fixed ceiling.
        limit: usize,
    },
}

fn check_cap(f: &FlagFiltration, homology_cap: usize) -> Result<(), ReductionError> {
    if homology_cap + 1 > f.dimension_cap() {
        Err(ReductionError::CapViolation {
            homology_cap,
            dimension_cap: f.dimension_cap(),
        })
    } else {
        Ok(())
    }
}

/// Z₂ addition of sorted index lists: symmetric difference into `out`.
fn add_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Reduces the boundary matrix with the clearing optimization and returns
/// persistence pairs plus essential cells up to `homology_cap`.
///
/// Dimensions are processed from `homology_cap + 1` down to 1; within a
/// dimension, columns run in ascending filtration order, which together
/// with pairing uniqueness makes the outcome identical to the plain
/// reduction in [`naive_reduce`].
pub fn reduce(f: &FlagFiltration, homology_cap: usize) -> Result<ReductionResult, ReductionError> {
    check_cap(f, homology_cap)?;
    let matrix = BoundaryMatrix::build(f);
    let n = matrix.len();

    // Per-dimension column index lists, ascending.
    let top = homology_cap + 1;
    let mut by_dim: Vec<Vec<u32>> = alloc::vec![Vec::new(); top + 1];
    for j in 0..n {
        let d = matrix.dimension(j);
        if d <= top {
            by_dim[d].push(j as u32);
        }
    }

    // A row index belongs to exactly one dimension, so one global
    // pivot-owner table serves every pass. u32::MAX = unowned.
    let mut owner_slot: Vec<u32> = alloc::vec![u32::MAX; n];
    let mut stored: Vec<Vec<u32>> = Vec::new();
    let mut cleared: Vec<bool> = alloc::vec![false; n];
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut essential: Vec<u32> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();

    for d in (1..=top).rev() {
        for &j in &by_dim[d] {
            if cleared[j as usize] {
                continue;
            }
            let mut col: Vec<u32> = matrix.column(j as usize).to_vec();
            loop {
                match col.last() {
                    None => {
                        // Birth column. Its class is essential when the
                        // dimension above (already fully processed) left
                        // it unpaired and it is within the cap.
                        if d <= homology_cap {
                            essential.push(j);
                        }
                        break;
                    }
                    Some(&low) => {
                        let slot = owner_slot[low as usize];
                        if slot == u32::MAX {
                            owner_slot[low as usize] = stored.len() as u32;
                            pairs.push((low, j));
                            cleared[low as usize] = true;
                            stored.push(col);
                            break;
                        }
                        add_into(&col, &stored[slot as usize], &mut scratch);
                        core::mem::swap(&mut col, &mut scratch);
                    }
                }
            }
        }
    }

    for &j in &by_dim[0] {
        if !cleared[j as usize] {
            essential.push(j);
        }
    }

    pairs.sort_unstable();
    essential.sort_unstable();
    Ok(ReductionResult {
        pairs,
        essential,
        homology_cap,
    })
}

/// Textbook single-pass column reduction, kept free of optimizations as a
/// reference implementation. Guarded to small filtrations.
///
/// Columns are visited in plain ascending filtration order across all
/// dimensions, held as ordered sets, and added element-by-element — a
/// structurally different path from [`reduce`] that must nevertheless
/// yield the same pairs and essential cells.
pub fn naive_reduce(f: &FlagFiltration, homology_cap: usize) -> Result<ReductionResult, ReductionError> {
    if f.len() > NAIVE_CELL_LIMIT {
        return Err(ReductionError::OracleTooLarge {
            cells: f.len(),
            limit: NAIVE_CELL_LIMIT,
        });
    }
    check_cap(f, homology_cap)?;
    let matrix = BoundaryMatrix::build(f);
    let n = matrix.len();

    let mut owner: HashMap<u32, BTreeSet<u32>, FxBuildHasher> = HashMap::default();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut positive: Vec<bool> = alloc::vec![false; n];

    for j in 0..n {
        let d = matrix.dimension(j);
        if d == 0 {
            positive[j] = true;
            continue;
        }
        if d > homology_cap + 1 {
            continue;
        }
        let mut col: BTreeSet<u32> = matrix.column(j).iter().copied().collect();
        loop {
            let low = match col.iter().next_back() {
                None => {
                    positive[j] = true;
                    break;
                }
                Some(&low) => low,
            };
            match owner.get(&low) {
                Some(other) => {
                    for &x in other {
                        if !col.remove(&x) {
                            col.insert(x);
                        }
                    }
                }
                None => {
                    pairs.push((low, j as u32));
                    owner.insert(low, col);
                    break;
                }
            }
        }
    }

    let mut paired_birth: Vec<bool> = alloc::vec![false; n];
    for &(b, _) in &pairs {
        paired_birth[b as usize] = true;
    }
    let essential: Vec<u32> = (0..n as u32)
        .filter(|&j| {
            positive[j as usize] && !paired_birth[j as usize] && matrix.dimension(j as usize) <= homology_cap
        })
        .collect();

    pairs.sort_unstable();
    Ok(ReductionResult {
        pairs,
        essential,
        homology_cap,
    })
}
