//! One task = one network to build and analyze: a (field, period, kind)
//! cell of the run grid. Task failures are isolated — they are recorded
//! and never abort sibling tasks.

use phlag_core::{
    betti_profile, build_collaboration_network, build_knowledge_network, diagram_from_reduction,
    enumerate_flag_complex_with_budget, network_measures, reduce, FlagFiltration, Granularity,
    MeasureVector, NetworkError, NetworkSpec, PersistenceDiagram, WeightedGraph,
};

use crate::config::{HomologyConfig, KindName};

/// Identity of one grid cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskKey {
    /// Field (subcategory) label.
    pub field: String,
    /// Target period (window end).
    pub period: i32,
    /// Projection kind.
    pub kind: KindName,
    /// Trailing window length in periods.
    pub window: u32,
}

impl TaskKey {
    /// Stable human-readable kind label for CSV cells and file names.
    pub fn kind_label(&self) -> &'static str {
        match self.kind {
            KindName::Knowledge => "knowledge",
            KindName::Collaboration => "collaboration",
        }
    }

    /// File-name slug: field sanitized to `[A-Za-z0-9._-]`, then period
    /// and kind.
    pub fn slug(&self) -> String {
        let field: String = self
            .field
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') { c } else { '-' })
            .collect();
        format!("{}_{}_{}", field, self.period, self.kind_label())
    }
}

/// Outcome class of one task.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaskStatus {
    /// Everything requested was computed.
    Ok,
    /// No record matched the field and period window; flagged, not failed.
    Empty,
    /// The task could not complete; sibling tasks are unaffected.
    Failed(String),
}

/// Everything computed for one grid cell.
#[derive(Debug)]
pub struct TaskResult {
    /// Which cell this is.
    pub key: TaskKey,
    /// Outcome class.
    pub status: TaskStatus,
    /// Built network (isolates already dropped when configured).
    pub graph: Option<WeightedGraph>,
    /// Cell counts Δ_0.. up to the dimension cap, straight from the
    /// filtration (independent of the homology cap).
    pub cells: Option<Vec<u64>>,
    /// Betti numbers β_0..β_cap.
    pub betti: Option<Vec<u64>>,
    /// Persistence diagram.
    pub diagram: Option<PersistenceDiagram>,
    /// Betti profile (Betti numbers plus profile-level cell counts).
    pub profile: Option<phlag_core::BettiProfile>,
    /// Classical summary measures.
    pub measures: Option<MeasureVector>,
    /// Full filtration, kept only when a dump was requested.
    pub filtration: Option<FlagFiltration>,
}

/// Which stages a verb needs.
#[derive(Debug, Clone, Copy, Default)]
pub struct Stages {
    /// Filtration, reduction, profile, diagram.
    pub homology: bool,
    /// Classical measures.
    pub measures: bool,
}

/// Builds and analyzes one grid cell.
pub fn run_task(
    key: TaskKey,
    records: &[phlag_core::PublicationRecord],
    granularity: Granularity,
    homology: &HomologyConfig,
    drop_isolates: bool,
    stages: Stages,
) -> TaskResult {
    let mut result = TaskResult {
        key,
        status: TaskStatus::Ok,
        graph: None,
        cells: None,
        betti: None,
        diagram: None,
        profile: None,
        measures: None,
        filtration: None,
    };
    let key = &result.key;
    let spec = match key.kind {
        KindName::Knowledge => NetworkSpec::knowledge(key.field.clone(), key.period),
        KindName::Collaboration => {
            NetworkSpec::collaboration(key.field.clone(), key.period, key.window, granularity)
        }
    };
    let built = match key.kind {
        KindName::Knowledge => build_knowledge_network(records, &spec),
        KindName::Collaboration => build_collaboration_network(records, &spec),
    };
    let graph = match built {
        Ok(g) => g,
        Err(NetworkError::EmptySelection { .. }) => {
            result.status = TaskStatus::Empty;
            return result;
        }
        Err(e) => {
            result.status = TaskStatus::Failed(e.to_string());
            return result;
        }
    };
    let graph = if drop_isolates { without_isolates(&graph) } else { graph };

    if stages.homology {
        let filtration = match enumerate_flag_complex_with_budget(
            &graph,
            homology.dimension_cap,
            homology.cell_budget,
        ) {
            Ok(f) => f,
            Err(e) => {
                result.status = TaskStatus::Failed(e.to_string());
                result.graph = Some(graph);
                return result;
            }
        };
        let reduction = match reduce(&filtration, homology.homology_cap) {
            Ok(r) => r,
            Err(e) => {
                result.status = TaskStatus::Failed(e.to_string());
                result.graph = Some(graph);
                return result;
            }
        };
        let profile = betti_profile(&filtration, &reduction);
        result.cells = Some(filtration.cell_counts());
        result.betti = Some(profile.betti_numbers().to_vec());
        result.diagram = Some(diagram_from_reduction(
            &filtration,
            &reduction,
            homology.drop_zero_persistence,
        ));
        result.profile = Some(profile);
        if homology.dump_filtrations {
            result.filtration = Some(filtration);
        }
    }

    if stages.measures {
        result.measures = Some(network_measures(&graph));
    }
    result.graph = Some(graph);
    result
}

/// Rebuilds the graph keeping only nodes with at least one edge;
/// remaining nodes are re-indexed in edge first-appearance order.
fn without_isolates(g: &WeightedGraph) -> WeightedGraph {
    let labeled: Vec<(String, String, f64)> = g
        .edges()
        .iter()
        .map(|e| {
            (
                g.symbols().label(e.source).to_string(),
                g.symbols().label(e.target).to_string(),
                e.weight,
            )
        })
        .collect();
    WeightedGraph::from_labeled_edges(labeled.iter().map(|(u, v, w)| (u.as_str(), v.as_str(), *w)))
        .expect("edges of a valid graph rebuild cleanly")
}

/// Sort key for deterministic output ordering: field, period, kind label.
pub fn task_order(a: &TaskKey, b: &TaskKey) -> std::cmp::Ordering {
    a.field
        .cmp(&b.field)
        .then(a.period.cmp(&b.period))
        .then(a.kind_label().cmp(b.kind_label()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use phlag_core::PublicationRecord;

    fn records() -> Vec<PublicationRecord> {
        vec![
            PublicationRecord::new("w1", 2000, "f", ["A", "B", "C"], ["x", "y"]),
            PublicationRecord::new("w2", 2000, "f", ["D"], ["z"]),
        ]
    }

    fn key(kind: KindName) -> TaskKey {
        TaskKey { field: "f".into(), period: 2000, kind, window: 1 }
    }

    #[test]
    fn knowledge_task_computes_requested_stages() {
        let r = run_task(
            key(KindName::Knowledge),
            &records(),
            Granularity::Yearly,
            &HomologyConfig::default(),
            false,
            Stages { homology: true, measures: true },
        );
        assert_eq!(r.status, TaskStatus::Ok);
        let g = r.graph.as_ref().unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (4, 3));
        assert_eq!(r.cells.as_deref(), Some(&[4, 3, 1][..]));
        // triangle plus an isolate → two components, no holes
        assert_eq!(r.betti.as_deref(), Some(&[2, 0, 0, 0][..]));
        assert_eq!(r.measures.as_ref().unwrap().isolate_count, 1);
        assert!(r.filtration.is_none(), "dump not requested");
    }

    #[test]
    fn isolate_dropping_rebuilds_the_graph() {
        let r = run_task(
            key(KindName::Knowledge),
            &records(),
            Granularity::Yearly,
            &HomologyConfig::default(),
            true,
            Stages { homology: true, measures: true },
        );
        let g = r.graph.as_ref().unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        assert_eq!(r.betti.as_deref(), Some(&[1, 0, 0, 0][..]));
        assert_eq!(r.measures.as_ref().unwrap().isolate_count, 0);
    }

    #[test]
    fn empty_selection_and_budget_failures_are_isolated() {
        let r = run_task(
            TaskKey { field: "missing".into(), period: 2000, kind: KindName::Knowledge, window: 1 },
            &records(),
            Granularity::Yearly,
            &HomologyConfig::default(),
            false,
            Stages::default(),
        );
        assert_eq!(r.status, TaskStatus::Empty);

        let tight = HomologyConfig { cell_budget: 3, ..HomologyConfig::default() };
        let r = run_task(
            key(KindName::Knowledge),
            &records(),
            Granularity::Yearly,
            &tight,
            false,
            Stages { homology: true, measures: false },
        );
        assert!(matches!(r.status, TaskStatus::Failed(_)));
        assert!(r.graph.is_some(), "network survives a downstream failure");
    }

    #[test]
    fn slugs_are_filesystem_safe() {
        let k = TaskKey { field: "phys/optics & lasers".into(), period: 1999, kind: KindName::Collaboration, window: 3 };
        assert_eq!(k.slug(), "phys-optics---lasers_1999_collaboration");
    }

    #[test]
    fn filtration_kept_when_dump_requested() {
        let dumping = HomologyConfig { dump_filtrations: true, ..HomologyConfig::default() };
        let r = run_task(
            key(KindName::Knowledge),
            &records(),
            Granularity::Yearly,
            &dumping,
            false,
            Stages { homology: true, measures: false },
        );
        assert_eq!(r.filtration.as_ref().unwrap().len(), 8);
    }
}
