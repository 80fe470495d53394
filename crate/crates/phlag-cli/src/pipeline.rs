//! End-to-end run orchestration.
//!
//! A run proceeds in four phases: ingest the records, enumerate the
//! (field, period, kind) task grid, compute every task (and, when
//! requested, every null-model group) on a worker pool, then emit all
//! artifacts serially in a fixed sort order and write the manifest last.
//! Because emission is serial and sorted and all compute is pure given
//! (configuration, records, seed), outputs are byte-identical across
//! reruns and independent of the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use phlag_core::{
    betti_null_test, betti_profile, enumerate_flag_complex_with_budget, mean_pairwise_distance,
    pearson_correlation, reduce, spearman_correlation, BettiProfile, DiagramMetric, MeasureVector,
    NullModelError, PersistenceDiagram, RandomModelSpec, WeightedGraph,
};
use rayon::prelude::*;

use crate::config::{HomologyConfig, KindName, MetricName, ModelName, RunConfig};
use crate::emit::{
    self, BettiRow, CorrelationRow, DistanceRow, DivergenceRow, EmitCaps, KindDistanceRow, NullRow,
    TimeseriesRow,
};
use crate::ingest;
use crate::manifest::{self, Manifest, NullGroupEntry, TaskEntry};
use crate::task::{run_task, task_order, Stages, TaskKey, TaskResult, TaskStatus};

/// What the invocation asked for. Each verb runs a prefix of the full
/// pipeline; later verbs include everything earlier ones produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    /// Networks only.
    Build,
    /// Networks + persistent homology (Betti tables, diagrams, time series).
    Persist,
    /// Persistence plus diagram-distance tables.
    Distances,
    /// Persistence plus null-model baselines.
    Baselines,
    /// Networks + classical measures.
    Measures,
    /// Everything, including topology-vs-measure correlations.
    All,
}

impl Verb {
    /// Stable name recorded in the manifest.
    pub fn label(self) -> &'static str {
        match self {
            Verb::Build => "build",
            Verb::Persist => "persist",
            Verb::Distances => "distances",
            Verb::Baselines => "baselines",
            Verb::Measures => "measures",
            Verb::All => "all",
        }
    }

    fn stages(self) -> ActiveStages {
        match self {
            Verb::Build => ActiveStages::default(),
            Verb::Persist => ActiveStages { homology: true, ..ActiveStages::default() },
            Verb::Distances => {
                ActiveStages { homology: true, distances: true, ..ActiveStages::default() }
            }
            Verb::Baselines => {
                ActiveStages { homology: true, baselines: true, ..ActiveStages::default() }
            }
            Verb::Measures => ActiveStages { measures: true, ..ActiveStages::default() },
            Verb::All => ActiveStages {
                homology: true,
                measures: true,
                distances: true,
                baselines: true,
                correlations: true,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ActiveStages {
    homology: bool,
    measures: bool,
    distances: bool,
    baselines: bool,
    correlations: bool,
}

/// Outcome counters for exit-code decisions and the console summary.
#[derive(Debug)]
pub struct RunReport {
    /// Tasks enumerated on the grid.
    pub tasks_total: usize,
    /// Tasks fully computed.
    pub tasks_ok: usize,
    /// Tasks with no matching records (flagged, not failed).
    pub tasks_empty: usize,
    /// Tasks that failed; details are in the manifest.
    pub tasks_failed: usize,
    /// Null-model groups attempted.
    pub null_groups: usize,
    /// Null-model groups that failed (infeasible groups do not count).
    pub null_groups_failed: usize,
    /// Files written, excluding the manifest.
    pub output_files: usize,
    /// Where the manifest landed.
    pub manifest_path: PathBuf,
}

impl RunReport {
    /// `0` on full success, `2` when any task or null group failed.
    pub fn exit_code(&self) -> i32 {
        if self.tasks_failed > 0 || self.null_groups_failed > 0 {
            2
        } else {
            0
        }
    }
}

/// Runs one verb end to end and writes all artifacts plus the manifest
/// under `config.output_dir`.
pub fn run_pipeline(config: &RunConfig, verb: Verb) -> Result<RunReport> {
    let stages = verb.stages();
    let records = ingest::read_records(&config.input)?;
    let rollup = match &config.input.field_rollup {
        Some(path) => Some(ingest::read_field_rollup(path)?),
        None => None,
    };

    let fields = select_fields(config, &records);
    let periods = select_periods(config, &records, &fields);

    let mut keys = Vec::new();
    for field in &fields {
        for &period in &periods {
            for net in &config.networks {
                keys.push(TaskKey {
                    field: field.clone(),
                    period,
                    kind: net.kind,
                    window: net.window,
                });
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .context("cannot build worker pool")?;

    let task_stages = Stages { homology: stages.homology, measures: stages.measures };
    let mut results: Vec<TaskResult> = pool.install(|| {
        keys.par_iter()
            .map(|key| {
                run_task(
                    key.clone(),
                    &records,
                    config.granularity.to_core(),
                    &config.homology,
                    config.drop_isolates,
                    task_stages,
                )
            })
            .collect()
    });
    results.sort_by(|a, b| task_order(&a.key, &b.key));

    let out = &config.output_dir;
    std::fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut outputs: Vec<PathBuf> = Vec::new();

    emit_networks(out, &results, &mut outputs)?;
    if stages.homology {
        emit_homology(out, config, &results, &mut outputs)?;
        emit_timeseries(out, config, &results, rollup.as_ref(), &mut outputs)?;
    }
    if stages.measures {
        emit_measures(out, &results, &mut outputs)?;
    }
    if stages.distances {
        emit_distances(out, config, &results, &mut outputs)?;
    }

    let mut null_entries: Vec<NullGroupEntry> = Vec::new();
    if stages.baselines {
        null_entries = emit_baselines(out, config, &results, &pool, &mut outputs)?;
    }
    if stages.correlations {
        emit_correlations(out, config, &results, &mut outputs)?;
    }

    let report = summarize(&results, &null_entries);
    let manifest = Manifest {
        schema_version: 1,
        verb: verb.label().to_string(),
        config_hash: config.semantic_hash(),
        versions: BTreeMap::from([
            ("phlag-cli".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("phlag-core".to_string(), phlag_core::VERSION.to_string()),
        ]),
        conventions: manifest::conventions(),
        record_count: records.len(),
        fields,
        periods,
        tasks: results.iter().map(task_entry).collect(),
        null_groups: null_entries,
        outputs: manifest::hash_outputs(out, &outputs)?,
    };
    let manifest_path = manifest::write_manifest(out, &manifest)?;

    Ok(RunReport {
        tasks_total: report.0,
        tasks_ok: report.1,
        tasks_empty: report.2,
        tasks_failed: report.3,
        null_groups: manifest.null_groups.len(),
        null_groups_failed: manifest
            .null_groups
            .iter()
            .filter(|g| g.status == "failed")
            .count(),
        output_files: outputs.len(),
        manifest_path,
    })
}

/// Explicitly configured fields (sorted, deduplicated), or every field
/// observed in the records.
fn select_fields(config: &RunConfig, records: &[phlag_core::PublicationRecord]) -> Vec<String> {
    if config.fields.is_empty() {
        records
            .iter()
            .map(|r| r.field.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    } else {
        let mut fields = config.fields.clone();
        fields.sort();
        fields.dedup();
        fields
    }
}

/// The configured period grid, or — when no range was given — every
/// granularity step from the earliest to the latest period observed in
/// the selected fields.
fn select_periods(
    config: &RunConfig,
    records: &[phlag_core::PublicationRecord],
    fields: &[String],
) -> Vec<i32> {
    if let Some(periods) = config.grid_periods() {
        return periods;
    }
    let observed: Vec<i32> = records
        .iter()
        .filter(|r| fields.iter().any(|f| *f == r.field))
        .map(|r| r.period)
        .collect();
    let (min, max) = match (observed.iter().min(), observed.iter().max()) {
        (Some(&min), Some(&max)) => (min, max),
        _ => return Vec::new(),
    };
    let g = config.granularity.to_core();
    let mut periods = Vec::new();
    let mut p = min;
    while p <= max {
        periods.push(p);
        p = g.next(p);
    }
    periods
}

fn task_entry(r: &TaskResult) -> TaskEntry {
    let (status, detail) = match &r.status {
        TaskStatus::Ok => ("ok", None),
        TaskStatus::Empty => ("empty", None),
        TaskStatus::Failed(reason) => ("failed", Some(reason.clone())),
    };
    TaskEntry {
        field: r.key.field.clone(),
        period: r.key.period,
        kind: r.key.kind_label().to_string(),
        window: r.key.window,
        status: status.to_string(),
        detail,
        nodes: r.graph.as_ref().map(WeightedGraph::node_count),
        edges: r.graph.as_ref().map(WeightedGraph::edge_count),
        cells: r.cells.as_ref().map(|c| c.iter().sum()),
    }
}

fn summarize(results: &[TaskResult], _null: &[NullGroupEntry]) -> (usize, usize, usize, usize) {
    let ok = results.iter().filter(|r| matches!(r.status, TaskStatus::Ok)).count();
    let empty = results.iter().filter(|r| matches!(r.status, TaskStatus::Empty)).count();
    let failed = results
        .iter()
        .filter(|r| matches!(r.status, TaskStatus::Failed(_)))
        .count();
    (results.len(), ok, empty, failed)
}

fn record_output(outputs: &mut Vec<PathBuf>, rel: PathBuf) -> PathBuf {
    outputs.push(rel.clone());
    rel
}

fn emit_networks(out: &Path, results: &[TaskResult], outputs: &mut Vec<PathBuf>) -> Result<()> {
    for r in results {
        if let Some(graph) = &r.graph {
            let rel = record_output(outputs, Path::new("networks").join(format!("{}.csv", r.key.slug())));
            emit::write_edge_list(&out.join(rel), graph)?;
        }
    }
    Ok(())
}

fn emit_homology(
    out: &Path,
    config: &RunConfig,
    results: &[TaskResult],
    outputs: &mut Vec<PathBuf>,
) -> Result<()> {
    let caps = EmitCaps {
        homology_cap: config.homology.homology_cap,
        dimension_cap: config.homology.dimension_cap,
    };
    let rows: Vec<BettiRow<'_>> = results
        .iter()
        .filter_map(|r| match (&r.betti, &r.cells) {
            (Some(betti), Some(cells)) => Some(BettiRow { key: &r.key, betti, cells }),
            _ => None,
        })
        .collect();
    let rel = record_output(outputs, PathBuf::from("betti.csv"));
    emit::write_betti(&out.join(rel), &rows, caps)?;

    for r in results {
        if let Some(diagram) = &r.diagram {
            let rel = record_output(outputs, Path::new("diagrams").join(format!("{}.csv", r.key.slug())));
            emit::write_diagram(&out.join(rel), diagram)?;
        }
        if let Some(filtration) = &r.filtration {
            let rel =
                record_output(outputs, Path::new("filtrations").join(format!("{}.csv", r.key.slug())));
            emit::write_filtration(&out.join(rel), filtration)?;
        }
    }
    Ok(())
}

/// Knowledge-network β and Δ series in long format, plus unweighted
/// field-level means when a subfield→field mapping was supplied.
fn emit_timeseries(
    out: &Path,
    config: &RunConfig,
    results: &[TaskResult],
    rollup: Option<&BTreeMap<String, String>>,
    outputs: &mut Vec<PathBuf>,
) -> Result<()> {
    let beta_max = config.homology.homology_cap.min(3);
    let delta_max = config.homology.dimension_cap.min(4);
    let mut rows: Vec<TimeseriesRow> = Vec::new();
    // (field, period, series) → accumulated subfield values.
    let mut grouped: BTreeMap<(String, i32, String), Vec<f64>> = BTreeMap::new();

    for r in results {
        if r.key.kind != KindName::Knowledge {
            continue;
        }
        let (Some(betti), Some(cells)) = (&r.betti, &r.cells) else { continue };
        let mut push = |series: String, value: f64| {
            if let Some(map) = rollup {
                if let Some(field) = map.get(&r.key.field) {
                    grouped
                        .entry((field.clone(), r.key.period, series.clone()))
                        .or_default()
                        .push(value);
                }
            }
            rows.push(TimeseriesRow {
                level: "subfield",
                field: r.key.field.clone(),
                period: r.key.period,
                series,
                value,
            });
        };
        for k in 0..=beta_max {
            push(format!("beta{k}"), betti.get(k).copied().unwrap_or(0) as f64);
        }
        for k in 0..=delta_max {
            push(format!("delta{k}"), cells.get(k).copied().unwrap_or(0) as f64);
        }
    }

    for ((field, period, series), values) in grouped {
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        rows.push(TimeseriesRow { level: "field", field, period, series, value: mean });
    }

    let rel = record_output(outputs, PathBuf::from("timeseries.csv"));
    emit::write_timeseries(&out.join(rel), &rows)
}

fn emit_measures(out: &Path, results: &[TaskResult], outputs: &mut Vec<PathBuf>) -> Result<()> {
    let rows: Vec<(&TaskKey, &MeasureVector)> = results
        .iter()
        .filter_map(|r| r.measures.as_ref().map(|m| (&r.key, m)))
        .collect();
    let rel = record_output(outputs, PathBuf::from("measures.csv"));
    emit::write_measures(&out.join(rel), &rows)
}

fn metric_core(metric: MetricName) -> DiagramMetric {
    match metric {
        MetricName::Bottleneck => DiagramMetric::Bottleneck,
        MetricName::Wasserstein => DiagramMetric::Wasserstein,
    }
}

fn metric_distance(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    dimension: usize,
    metric: MetricName,
) -> Result<f64> {
    let d = match metric {
        MetricName::Bottleneck => phlag_core::bottleneck_distance(a, b, dimension),
        MetricName::Wasserstein => phlag_core::wasserstein_distance(a, b, dimension),
    };
    d.map_err(|e| anyhow::anyhow!("diagram distance failed: {e}"))
}

/// Cross-field pair distances, per-period means, and within-field
/// knowledge-vs-collaboration distances.
fn emit_distances(
    out: &Path,
    config: &RunConfig,
    results: &[TaskResult],
    outputs: &mut Vec<PathBuf>,
) -> Result<()> {
    // (field, kind, period) → diagram, for completed tasks only.
    let mut diagrams: BTreeMap<(&str, &str, i32), &PersistenceDiagram> = BTreeMap::new();
    for r in results {
        if let Some(d) = &r.diagram {
            diagrams.insert((r.key.field.as_str(), r.key.kind_label(), r.key.period), d);
        }
    }
    let periods: BTreeSet<i32> = diagrams.keys().map(|&(_, _, p)| p).collect();

    let mut pair_rows: Vec<DistanceRow> = Vec::new();
    let mut mean_rows: Vec<DivergenceRow> = Vec::new();
    for &period in &periods {
        let present: Vec<(&str, &PersistenceDiagram)> = diagrams
            .iter()
            .filter(|&(&(_, kind, p), _)| kind == "knowledge" && p == period)
            .map(|(&(field, _, _), &d)| (field, d))
            .collect();
        for i in 0..present.len() {
            for j in (i + 1)..present.len() {
                for dimension in 0..=config.homology.homology_cap {
                    for &metric in &config.metrics {
                        pair_rows.push(DistanceRow {
                            field_a: present[i].0.to_string(),
                            period_a: period,
                            field_b: present[j].0.to_string(),
                            period_b: period,
                            dimension,
                            metric: metric.label(),
                            distance: metric_distance(present[i].1, present[j].1, dimension, metric)?,
                        });
                    }
                }
            }
        }
        if present.len() >= 2 {
            let cloned: Vec<PersistenceDiagram> =
                present.iter().map(|(_, d)| (*d).clone()).collect();
            for dimension in 0..=config.homology.homology_cap {
                for &metric in &config.metrics {
                    let summary = mean_pairwise_distance(&cloned, dimension, metric_core(metric))
                        .map_err(|e| anyhow::anyhow!("pairwise summary failed: {e}"))?;
                    mean_rows.push(DivergenceRow {
                        period,
                        kind: "knowledge",
                        dimension,
                        metric: metric.label(),
                        mean: summary.mean,
                        finite_pairs: summary.finite_pairs,
                        infinite_pairs: summary.infinite_pairs,
                    });
                }
            }
        }
    }

    let mut kind_rows: Vec<KindDistanceRow> = Vec::new();
    let fields: BTreeSet<&str> = diagrams.keys().map(|&(f, _, _)| f).collect();
    for &field in &fields {
        for &period in &periods {
            let (Some(knowledge), Some(collaboration)) = (
                diagrams.get(&(field, "knowledge", period)),
                diagrams.get(&(field, "collaboration", period)),
            ) else {
                continue;
            };
            for dimension in 0..=config.homology.homology_cap {
                for &metric in &config.metrics {
                    kind_rows.push(KindDistanceRow {
                        field: field.to_string(),
                        period,
                        dimension,
                        metric: metric.label(),
                        distance: metric_distance(knowledge, collaboration, dimension, metric)?,
                    });
                }
            }
        }
    }

    let rel = record_output(outputs, PathBuf::from("distances.csv"));
    emit::write_distances(&out.join(rel), &pair_rows)?;
    let rel = record_output(outputs, PathBuf::from("divergence.csv"));
    emit::write_divergence(&out.join(rel), &mean_rows)?;
    let rel = record_output(outputs, PathBuf::from("distances_kinds.csv"));
    emit::write_kind_distances(&out.join(rel), &kind_rows)
}

/// One null-model comparison group: a reference knowledge network
/// against one model at one parameter value.
struct NullGroup<'a> {
    field: &'a str,
    period: i32,
    model: ModelName,
    param: Option<f64>,
    graph: &'a WeightedGraph,
    profile: &'a BettiProfile,
}

fn emit_baselines(
    out: &Path,
    config: &RunConfig,
    results: &[TaskResult],
    pool: &rayon::ThreadPool,
    outputs: &mut Vec<PathBuf>,
) -> Result<Vec<NullGroupEntry>> {
    let mut groups: Vec<NullGroup<'_>> = Vec::new();
    if let Some(null_config) = &config.null_models {
        for r in results {
            if r.key.kind != KindName::Knowledge {
                continue;
            }
            let (Some(graph), Some(profile)) = (&r.graph, &r.profile) else { continue };
            if !matches!(r.status, TaskStatus::Ok) {
                continue;
            }
            for &model in &null_config.models {
                let params: Vec<Option<f64>> = match model {
                    ModelName::Ws => null_config.ws_rewire_probs.iter().map(|&p| Some(p)).collect(),
                    ModelName::Er | ModelName::Ba => vec![None],
                };
                for param in params {
                    groups.push(NullGroup {
                        field: &r.key.field,
                        period: r.key.period,
                        model,
                        param,
                        graph,
                        profile,
                    });
                }
            }
        }
    }

    let computed: Vec<(NullGroupEntry, Vec<NullRow>)> = pool.install(|| {
        groups
            .par_iter()
            .map(|g| run_null_group(g, config))
            .collect()
    });

    let mut entries = Vec::with_capacity(computed.len());
    let mut rows: Vec<NullRow> = Vec::new();
    for (entry, group_rows) in computed {
        entries.push(entry);
        rows.extend(group_rows);
    }
    let rel = record_output(outputs, PathBuf::from("null_models.csv"));
    emit::write_null_report(&out.join(rel), &rows)?;
    Ok(entries)
}

/// Flag homology of one graph under the run's caps and budget.
fn profile_of(graph: &WeightedGraph, homology: &HomologyConfig) -> Result<BettiProfile, String> {
    let filtration =
        enumerate_flag_complex_with_budget(graph, homology.dimension_cap, homology.cell_budget)
            .map_err(|e| e.to_string())?;
    let reduction = reduce(&filtration, homology.homology_cap).map_err(|e| e.to_string())?;
    Ok(betti_profile(&filtration, &reduction))
}

fn run_null_group(group: &NullGroup<'_>, config: &RunConfig) -> (NullGroupEntry, Vec<NullRow>) {
    let null_config = config.null_models.as_ref().expect("groups exist only with null config");
    let target = group.graph.edge_count();
    let mut entry = NullGroupEntry {
        field: group.field.to_string(),
        period: group.period,
        model: group.model.label().to_string(),
        param: group.param,
        status: "ok".to_string(),
        detail: None,
        target_edge_count: target,
        actual_edge_count: None,
        edge_count_delta: None,
        instances: 0,
    };

    let spec = RandomModelSpec {
        model: group.model.to_core(),
        node_count: group.graph.node_count(),
        target_edge_count: target,
        seeds: null_config.seeds.iter().map(|&s| config.seed.wrapping_add(s)).collect(),
        ws_rewire_probs: group.param.into_iter().collect(),
    };

    let mut instances: Vec<(u64, BettiProfile)> = Vec::new();
    for &listed in &null_config.seeds {
        let effective = config.seed.wrapping_add(listed);
        let graph = match spec.generate(group.param, effective) {
            Ok(g) => g,
            Err(e @ NullModelError::InfeasibleEdgeCount { .. }) => {
                entry.status = "infeasible".to_string();
                entry.detail = Some(e.to_string());
                return (entry, Vec::new());
            }
            Err(e) => {
                entry.status = "failed".to_string();
                entry.detail = Some(e.to_string());
                return (entry, Vec::new());
            }
        };
        if entry.actual_edge_count.is_none() {
            let actual = graph.edge_count();
            entry.actual_edge_count = Some(actual);
            entry.edge_count_delta = Some(actual as i64 - target as i64);
        }
        let profile = match profile_of(&graph, &config.homology) {
            Ok(p) => p,
            Err(detail) => {
                entry.status = "failed".to_string();
                entry.detail = Some(detail);
                return (entry, Vec::new());
            }
        };
        instances.push((listed, profile));
    }
    entry.instances = instances.len();

    let beta_max = config.homology.homology_cap.min(3);
    let samples: Vec<BettiProfile> = instances.iter().map(|(_, p)| p.clone()).collect();
    let mut t = [None; 4];
    let mut p = [None; 4];
    for dimension in 0..=beta_max {
        match betti_null_test(group.profile, &samples, dimension) {
            Ok(test) => {
                t[dimension] = Some(test.t);
                p[dimension] = Some(test.p);
            }
            Err(e) => {
                entry.status = "failed".to_string();
                entry.detail = Some(e.to_string());
                return (entry, Vec::new());
            }
        }
    }

    let rows = instances
        .iter()
        .map(|(listed, profile)| {
            let mut betti = [None; 4];
            for (dimension, slot) in betti.iter_mut().enumerate().take(beta_max + 1) {
                *slot = Some(profile.betti(dimension));
            }
            NullRow {
                field: group.field.to_string(),
                period: group.period,
                model: group.model.label(),
                param: group.param,
                seed: *listed,
                betti,
                t,
                p,
            }
        })
        .collect();
    (entry, rows)
}

const CORRELATION_MEASURES: [&str; 8] = [
    "node_count",
    "edge_count",
    "density",
    "average_clustering",
    "global_efficiency",
    "degree_assortativity",
    "bridge_count",
    "isolate_count",
];

fn measure_value(m: &MeasureVector, name: &str) -> Option<f64> {
    match name {
        "node_count" => Some(m.node_count as f64),
        "edge_count" => Some(m.edge_count as f64),
        "density" => Some(m.density),
        "average_clustering" => Some(m.average_clustering),
        "global_efficiency" => Some(m.global_efficiency),
        "degree_assortativity" => m.degree_assortativity,
        "bridge_count" => Some(m.bridge_count as f64),
        "isolate_count" => Some(m.isolate_count as f64),
        _ => None,
    }
}

/// Correlates each Betti series with each classical-measure series over
/// the periods of one (field, kind); rows appear only when the
/// correlation is defined (enough periods, nondegenerate variance).
fn emit_correlations(
    out: &Path,
    config: &RunConfig,
    results: &[TaskResult],
    outputs: &mut Vec<PathBuf>,
) -> Result<()> {
    let beta_max = config.homology.homology_cap.min(3);
    // (field, kind) → per-period (betti, measures), in period order.
    let mut series: BTreeMap<(&str, &'static str), Vec<(&Vec<u64>, &MeasureVector)>> =
        BTreeMap::new();
    for r in results {
        if let (Some(betti), Some(measures)) = (&r.betti, &r.measures) {
            series
                .entry((r.key.field.as_str(), r.key.kind_label()))
                .or_default()
                .push((betti, measures));
        }
    }

    let mut rows: Vec<CorrelationRow> = Vec::new();
    for (&(field, kind), points) in &series {
        for dimension in 0..=beta_max {
            for measure in CORRELATION_MEASURES {
                let pairs: Vec<(f64, f64)> = points
                    .iter()
                    .filter_map(|(betti, m)| {
                        measure_value(m, measure)
                            .map(|y| (betti.get(dimension).copied().unwrap_or(0) as f64, y))
                    })
                    .collect();
                let x: Vec<f64> = pairs.iter().map(|&(x, _)| x).collect();
                let y: Vec<f64> = pairs.iter().map(|&(_, y)| y).collect();
                if let Ok(value) = pearson_correlation(&x, &y) {
                    rows.push(CorrelationRow {
                        field: field.to_string(),
                        kind,
                        dimension,
                        measure,
                        method: "pearson",
                        value,
                        observations: pairs.len(),
                    });
                }
                if let Ok(value) = spearman_correlation(&x, &y) {
                    rows.push(CorrelationRow {
                        field: field.to_string(),
                        kind,
                        dimension,
                        measure,
                        method: "spearman",
                        value,
                        observations: pairs.len(),
                    });
                }
            }
        }
    }

    let rel = record_output(outputs, PathBuf::from("correlations.csv"));
    emit::write_correlations(&out.join(rel), &rows)
}
