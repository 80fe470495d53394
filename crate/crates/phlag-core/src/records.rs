//! Two-mode activity records and their one-mode co-occurrence projections.
//!
//! A [`PublicationRecord`] ties one work to a field, a period, a list of
//! classification codes, and a list of author ids. Two projections are
//! supported:
//!
//! - *knowledge* networks connect codes that appear on the same work, for
//!   one field and one period;
//! - *collaboration* networks connect authors with a co-authored work in a
//!   trailing window of periods ending at the target period.
//!
//! Every unordered pair within one record contributes `+1` to its edge
//! weight, so weights are plain co-occurrence counts. Periods are integers:
//! a year, or `year×100 + month` when monthly granularity is selected.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;
use rustc_hash::FxBuildHasher;
use thiserror::Error;

use crate::graph::{GraphError, SymbolTable, WeightedGraph};

/// One work: the atomic two-mode input row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicationRecord {
    /// Stable identifier of the work.
    pub work_id: String,
    /// Year, or `year×100 + month` under monthly granularity.
    pub period: i32,
    /// Field / subcategory label the work belongs to.
    pub field: String,
    /// Classification codes on the work (deduplicated, order preserved).
    pub codes: Vec<String>,
    /// Disambiguated author ids (deduplicated, order preserved).
    pub authors: Vec<String>,
}

impl PublicationRecord {
    /// Builds a record, deduplicating codes and authors while preserving
    /// first-appearance order.
    pub fn new(
        work_id: impl Into<String>,
        period: i32,
        field: impl Into<String>,
        codes: impl IntoIterator<Item = impl Into<String>>,
        authors: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        PublicationRecord {
            work_id: work_id.into(),
            period,
            field: field.into(),
            codes: dedup_preserving_order(codes),
            authors: dedup_preserving_order(authors),
        }
    }
}

fn dedup_preserving_order(items: impl IntoIterator<Item = impl Into<String>>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for item in items {
        let item = item.into();
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

/// Which one-mode projection a [`NetworkSpec`] requests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkKind {
    /// Codes co-occurring on works.
    Knowledge,
    /// Authors co-authoring works.
    Collaboration,
}

impl core::fmt::Display for NetworkKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            NetworkKind::Knowledge => "knowledge",
            NetworkKind::Collaboration => "collaboration",
        })
    }
}

/// How period integers advance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Granularity {
    /// Periods are plain years.
    Yearly,
    /// Periods are `year×100 + month`, month ∈ 1..=12.
    Monthly,
}

impl Granularity {
    /// The period immediately before `period`.
    pub fn previous(self, period: i32) -> i32 {
        match self {
            Granularity::Yearly => period - 1,
            Granularity::Monthly => {
                let (year, month) = (period.div_euclid(100), period.rem_euclid(100));
                if month <= 1 {
                    (year - 1) * 100 + 12
                } else {
                    year * 100 + month - 1
                }
            }
        }
    }

    /// The period immediately after `period`.
    pub fn next(self, period: i32) -> i32 {
        match self {
            Granularity::Yearly => period + 1,
            Granularity::Monthly => {
                let (year, month) = (period.div_euclid(100), period.rem_euclid(100));
                if month >= 12 {
                    (year + 1) * 100 + 1
                } else {
                    year * 100 + month + 1
                }
            }
        }
    }

    /// True if `period` is a well-formed encoding for this granularity.
    pub fn is_valid_period(self, period: i32) -> bool {
        match self {
            Granularity::Yearly => true,
            Granularity::Monthly => (1..=12).contains(&period.rem_euclid(100)),
        }
    }
}

/// Selects one network to build: projection kind, field, target period,
/// and (for collaboration) the trailing window length in periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSpec {
    /// Projection kind.
    pub kind: NetworkKind,
    /// Field label records must carry.
    pub field: String,
    /// Target period (window end).
    pub period: i32,
    /// Trailing window length in periods; a window of `w` ending at `y`
    /// covers `[y−w+1, y]`. Knowledge networks always use 1.
    pub window: u32,
    /// Period arithmetic used when the window spans several periods.
    pub granularity: Granularity,
}

impl NetworkSpec {
    /// Spec for a knowledge network of `field` at `period` (window 1).
    pub fn knowledge(field: impl Into<String>, period: i32) -> Self {
        NetworkSpec {
            kind: NetworkKind::Knowledge,
            field: field.into(),
            period,
            window: 1,
            granularity: Granularity::Yearly,
        }
    }

    /// Spec for a collaboration network over a trailing window of
    /// `window` periods ending at `period`.
    pub fn collaboration(field: impl Into<String>, period: i32, window: u32, granularity: Granularity) -> Self {
        NetworkSpec {
            kind: NetworkKind::Collaboration,
            field: field.into(),
            period,
            window,
            granularity,
        }
    }

    /// The periods the window covers, ending at `self.period`.
    pub fn window_periods(&self) -> Vec<i32> {
        let mut periods = Vec::with_capacity(self.window as usize);
        let mut p = self.period;
        for _ in 0..self.window {
            periods.push(p);
            p = self.granularity.previous(p);
        }
        periods
    }

    fn validate(&self) -> Result<(), NetworkError> {
        if self.window == 0 {
            return Err(NetworkError::InvalidSpec {
                reason: "window must be at least 1 period",
            });
        }
        if self.kind == NetworkKind::Knowledge && self.window != 1 {
            return Err(NetworkError::InvalidSpec {
                reason: "knowledge networks are single-period (window 1)",
            });
        }
        Ok(())
    }
}

/// Errors from network construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    /// No record matched the requested field and period window. Callers
    /// that tolerate empty selections should record the flag and move on.
    #[error("no records match field {field:?} at period {period}")]
    EmptySelection {
        /// Requested field.
        field: String,
        /// Requested target period.
        period: i32,
    },
    /// The spec violates a structural constraint.
    #[error("invalid network spec: {reason}")]
    InvalidSpec {
        /// Human-readable constraint that failed.
        reason: &'static str,
    },
    /// The underlying graph assembly failed (e.g. empty label).
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Interns each item of one record (deduplicated, first-appearance order)
/// and adds `+1` to every unordered pair among them.
fn accumulate_clique(
    symbols: &mut SymbolTable,
    counts: &mut BTreeMap<(u32, u32), u64>,
    items: &[String],
) -> Result<(), GraphError> {
    let mut ids: Vec<u32> = Vec::with_capacity(items.len());
    for item in items {
        let id = symbols.intern(item)?.0;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            let key = if a < b { (a, b) } else { (b, a) };
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    Ok(())
}

fn counts_to_graph(symbols: SymbolTable, counts: BTreeMap<(u32, u32), u64>) -> Result<WeightedGraph, GraphError> {
    WeightedGraph::from_interned(symbols, counts.into_iter().map(|((u, v), c)| (u, v, c as f64)))
}

/// Builds the knowledge network (code co-occurrence) of a field at a
/// period. Nodes are all codes on matching records, including codes that
/// never co-occur; each record contributes `+1` to every unordered code
/// pair it carries.
pub fn build_knowledge_network(
    records: &[PublicationRecord],
    spec: &NetworkSpec,
) -> Result<WeightedGraph, NetworkError> {
    if spec.kind != NetworkKind::Knowledge {
        return Err(NetworkError::InvalidSpec {
            reason: "spec kind must be knowledge",
        });
    }
    spec.validate()?;
    project_selected(records, spec, |r| &r.codes)
}

/// Builds the collaboration network (co-authorship) of a field over the
/// trailing window ending at `spec.period`.
pub fn build_collaboration_network(
    records: &[PublicationRecord],
    spec: &NetworkSpec,
) -> Result<WeightedGraph, NetworkError> {
    if spec.kind != NetworkKind::Collaboration {
        return Err(NetworkError::InvalidSpec {
            reason: "spec kind must be collaboration",
        });
    }
    spec.validate()?;
    project_selected(records, spec, |r| &r.authors)
}

fn project_selected(
    records: &[PublicationRecord],
    spec: &NetworkSpec,
    items: impl Fn(&PublicationRecord) -> &[String],
) -> Result<WeightedGraph, NetworkError> {
    let periods = spec.window_periods();
    let mut symbols = SymbolTable::new();
    let mut counts = BTreeMap::new();
    let mut matched = false;
    for record in records {
        if record.field == spec.field && periods.contains(&record.period) {
            matched = true;
            accumulate_clique(&mut symbols, &mut counts, items(record))?;
        }
    }
    if !matched {
        return Err(NetworkError::EmptySelection {
            field: spec.field.clone(),
            period: spec.period,
        });
    }
    Ok(counts_to_graph(symbols, counts)?)
}

/// Projects a raw two-mode `(work_id, label)` edge list to the one-mode
/// co-occurrence graph: labels sharing a work gain `+1` weight per work.
///
/// Grouping preserves first-appearance order of works and of labels within
/// a work, so the result is structurally identical to building a knowledge
/// network from the equivalent grouped records.
pub fn project_two_mode(pairs: &[(String, String)]) -> Result<WeightedGraph, NetworkError> {
    let mut order: Vec<Vec<String>> = Vec::new();
    let mut work_slot: HashMap<&str, usize, FxBuildHasher> =
        HashMap::with_hasher(FxBuildHasher);
    for (work, label) in pairs {
        let slot = *work_slot.entry(work.as_str()).or_insert_with(|| {
            order.push(Vec::new());
            order.len() - 1
        });
        if !order[slot].contains(label) {
            order[slot].push(label.clone());
        }
    }
    let mut symbols = SymbolTable::new();
    let mut counts = BTreeMap::new();
    for labels in &order {
        accumulate_clique(&mut symbols, &mut counts, labels)?;
    }
    Ok(counts_to_graph(symbols, counts)?)
}
