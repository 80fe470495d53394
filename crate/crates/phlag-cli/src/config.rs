//! Run configuration: one JSON document describing inputs, the task grid,
//! homology caps, metrics, null models, and output location, plus the
//! command-line overrides layered on top of it.
//!
//! The configuration hash covers everything that can influence computed
//! results — it deliberately excludes `output_dir` and `workers`, which
//! only steer where files land and how work is scheduled.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use phlag_core::{Granularity, RandomModel};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Input sources: either one JSON-Lines record file, or a CSV trio
/// (works manifest plus per-work code and/or author lists).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InputConfig {
    /// JSON Lines, one record object per line with keys `work_id`,
    /// `period`, `field`, `codes`, `authors`.
    pub records: Option<PathBuf>,
    /// CSV `work_id,period,field` defining the works (CSV-trio mode).
    pub works: Option<PathBuf>,
    /// CSV `work_id,code` (CSV-trio mode).
    pub codes: Option<PathBuf>,
    /// CSV `work_id,author` (CSV-trio mode).
    pub authors: Option<PathBuf>,
    /// Optional CSV `subfield,field` used to aggregate time-series rows
    /// to field level.
    pub field_rollup: Option<PathBuf>,
}

/// Serializable granularity name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GranularityName {
    /// Periods are years.
    Yearly,
    /// Periods are `year×100 + month`.
    Monthly,
}

impl GranularityName {
    /// The core-library equivalent.
    pub fn to_core(self) -> Granularity {
        match self {
            GranularityName::Yearly => Granularity::Yearly,
            GranularityName::Monthly => Granularity::Monthly,
        }
    }

    fn parse(text: &str) -> Result<Self> {
        match text {
            "yearly" => Ok(GranularityName::Yearly),
            "monthly" => Ok(GranularityName::Monthly),
            other => bail!("granularity must be `yearly` or `monthly`, got {other:?}"),
        }
    }
}

/// Inclusive period range for the task grid.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodRange {
    /// First period of the grid.
    pub start: i32,
    /// Last period of the grid (inclusive).
    pub end: i32,
}

/// Serializable network-kind name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindName {
    /// Code co-occurrence projection.
    Knowledge,
    /// Co-authorship projection.
    Collaboration,
}


/// One projection to build per (field, period).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    /// Which projection.
    pub kind: KindName,
    /// Trailing window length in periods (collaboration only; knowledge
    /// must stay at 1).
    #[serde(default = "default_window")]
    pub window: u32,
}

fn default_window() -> u32 {
    1
}

fn default_networks() -> Vec<NetworkConfig> {
    vec![
        NetworkConfig { kind: KindName::Knowledge, window: 1 },
        NetworkConfig { kind: KindName::Collaboration, window: 3 },
    ]
}

/// Caps and toggles for filtration and homology computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HomologyConfig {
    /// Highest simplex dimension enumerated (cells have ≤ cap+1 vertices).
    pub dimension_cap: usize,
    /// Highest homology dimension computed; must be ≤ dimension_cap − 1.
    pub homology_cap: usize,
    /// Abort enumeration past this many cells.
    pub cell_budget: usize,
    /// Drop pairs whose birth and death coincide exactly.
    pub drop_zero_persistence: bool,
    /// Also write each task's full filtration as a CSV dump.
    pub dump_filtrations: bool,
}

impl Default for HomologyConfig {
    fn default() -> Self {
        HomologyConfig {
            dimension_cap: phlag_core::DEFAULT_DIMENSION_CAP,
            homology_cap: phlag_core::DEFAULT_HOMOLOGY_CAP,
            cell_budget: phlag_core::DEFAULT_CELL_BUDGET,
            drop_zero_persistence: true,
            dump_filtrations: false,
        }
    }
}

/// Serializable diagram-metric name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricName {
    /// Max-displacement matching distance.
    Bottleneck,
    /// Root-sum-of-squares matching distance.
    Wasserstein,
}

impl MetricName {
    /// Column label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            MetricName::Bottleneck => "bottleneck",
            MetricName::Wasserstein => "wasserstein",
        }
    }
}

fn default_metrics() -> Vec<MetricName> {
    vec![MetricName::Bottleneck, MetricName::Wasserstein]
}

/// Serializable random-model name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    /// Uniform random graph with exactly the matched edge count.
    Er,
    /// Preferential attachment.
    Ba,
    /// Rewired ring lattice.
    Ws,
}

impl ModelName {
    /// The core-library equivalent.
    pub fn to_core(self) -> RandomModel {
        match self {
            ModelName::Er => RandomModel::ErdosRenyi,
            ModelName::Ba => RandomModel::BarabasiAlbert,
            ModelName::Ws => RandomModel::WattsStrogatz,
        }
    }

    /// Column label used in CSV output and the manifest.
    pub fn label(self) -> &'static str {
        match self {
            ModelName::Er => "er",
            ModelName::Ba => "ba",
            ModelName::Ws => "ws",
        }
    }
}

/// Null-model ensemble settings; omit the section (or set it to `null`)
/// to skip baselines entirely.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NullModelConfig {
    /// Which models to sample.
    pub models: Vec<ModelName>,
    /// Per-instance seeds; each is offset by the run seed.
    pub seeds: Vec<u64>,
    /// Rewiring probabilities for the ring-lattice model.
    pub ws_rewire_probs: Vec<f64>,
}

impl Default for NullModelConfig {
    fn default() -> Self {
        NullModelConfig {
            models: vec![ModelName::Er, ModelName::Ba, ModelName::Ws],
            seeds: phlag_core::RandomModelSpec::default_seeds(),
            ws_rewire_probs: phlag_core::RandomModelSpec::default_rewire_probs(),
        }
    }
}

fn default_null_models() -> Option<NullModelConfig> {
    Some(NullModelConfig::default())
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// The full run configuration, loaded from one JSON document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Where records come from.
    #[serde(default)]
    pub input: InputConfig,
    /// Period arithmetic for the whole run.
    #[serde(default = "default_granularity")]
    pub granularity: GranularityName,
    /// Inclusive period range; omit to use the distinct periods observed
    /// in the input.
    #[serde(default)]
    pub periods: Option<PeriodRange>,
    /// Fields to process; empty means every field observed in the input.
    #[serde(default)]
    pub fields: Vec<String>,
    /// Projections to build per (field, period).
    #[serde(default = "default_networks")]
    pub networks: Vec<NetworkConfig>,
    /// Filtration / homology caps.
    #[serde(default)]
    pub homology: HomologyConfig,
    /// Diagram metrics to compute.
    #[serde(default = "default_metrics")]
    pub metrics: Vec<MetricName>,
    /// Null-model ensembles (`null` disables).
    #[serde(default = "default_null_models")]
    pub null_models: Option<NullModelConfig>,
    /// Output directory (created if missing). Excluded from the
    /// configuration hash.
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Run seed, added to every null-model instance seed.
    #[serde(default)]
    pub seed: u64,
    /// Worker thread count; omit to use all cores. Excluded from the
    /// configuration hash.
    #[serde(default)]
    pub workers: Option<usize>,
    /// Remove degree-0 nodes from built networks before analysis.
    #[serde(default)]
    pub drop_isolates: bool,
}

fn default_granularity() -> GranularityName {
    GranularityName::Yearly
}

/// Command-line overrides applied on top of the loaded file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// Replaces `output_dir`.
    pub output: Option<PathBuf>,
    /// Replaces `workers`.
    pub workers: Option<usize>,
    /// Replaces `seed`.
    pub seed: Option<u64>,
    /// Replaces `fields`.
    pub fields: Option<Vec<String>>,
    /// Replaces `periods`, as `START:END`.
    pub periods: Option<String>,
    /// Replaces `granularity`.
    pub granularity: Option<String>,
    /// Replaces `homology.homology_cap`.
    pub homology_cap: Option<usize>,
    /// Replaces `homology.cell_budget`.
    pub cell_budget: Option<usize>,
    /// Sets `drop_isolates`.
    pub drop_isolates: bool,
}

impl RunConfig {
    /// Loads the JSON document at `path` and applies `overrides`; the
    /// result is validated before being returned.
    pub fn load(path: &Path, overrides: &Overrides) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let mut config: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse config {}", path.display()))?;
        config.apply(overrides)?;
        config.validate()?;
        Ok(config)
    }

    fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(dir) = &o.output {
            self.output_dir = dir.clone();
        }
        if let Some(workers) = o.workers {
            self.workers = Some(workers);
        }
        if let Some(seed) = o.seed {
            self.seed = seed;
        }
        if let Some(fields) = &o.fields {
            self.fields = fields.clone();
        }
        if let Some(text) = &o.periods {
            let (start, end) = text
                .split_once(':')
                .with_context(|| format!("periods must be START:END, got {text:?}"))?;
            self.periods = Some(PeriodRange {
                start: start.trim().parse().with_context(|| format!("bad period {start:?}"))?,
                end: end.trim().parse().with_context(|| format!("bad period {end:?}"))?,
            });
        }
        if let Some(text) = &o.granularity {
            self.granularity = GranularityName::parse(text)?;
        }
        if let Some(cap) = o.homology_cap {
            self.homology.homology_cap = cap;
        }
        if let Some(budget) = o.cell_budget {
            self.homology.cell_budget = budget;
        }
        if o.drop_isolates {
            self.drop_isolates = true;
        }
        Ok(())
    }

    /// Checks the structural invariants of the configuration.
    pub fn validate(&self) -> Result<()> {
        let input = &self.input;
        let csv_trio = input.works.is_some();
        if input.records.is_none() && !csv_trio {
            bail!("input must provide `records` (JSON Lines) or `works` plus `codes`/`authors` (CSV)");
        }
        if input.records.is_some() && csv_trio {
            bail!("input must use either `records` or the CSV trio, not both");
        }
        if csv_trio && input.codes.is_none() && input.authors.is_none() {
            bail!("CSV input needs at least one of `codes` or `authors`");
        }
        if let Some(range) = self.periods {
            if range.start > range.end {
                bail!("period range is empty: start {} > end {}", range.start, range.end);
            }
            let g = self.granularity.to_core();
            for p in [range.start, range.end] {
                if !g.is_valid_period(p) {
                    bail!("period {p} is not valid for the configured granularity");
                }
            }
        }
        if self.networks.is_empty() {
            bail!("at least one network kind must be configured");
        }
        for (i, a) in self.networks.iter().enumerate() {
            if a.kind == KindName::Knowledge && a.window != 1 {
                bail!("knowledge networks are single-period; set window 1");
            }
            if a.window == 0 {
                bail!("window must be at least 1 period");
            }
            for b in &self.networks[i + 1..] {
                if a.kind == b.kind {
                    bail!("each network kind may appear once per run (output rows are keyed by field, period, kind); run differing windows separately");
                }
            }
        }
        let h = &self.homology;
        if h.dimension_cap == 0 || h.homology_cap > h.dimension_cap - 1 {
            bail!(
                "homology cap {} must be at most dimension cap {} minus 1",
                h.homology_cap,
                h.dimension_cap
            );
        }
        if h.cell_budget == 0 {
            bail!("cell budget must be positive");
        }
        if self.metrics.is_empty() {
            bail!("at least one diagram metric must be configured");
        }
        if let Some(nulls) = &self.null_models {
            if nulls.models.is_empty() {
                bail!("null-model section present but no models listed");
            }
            if nulls.seeds.is_empty() {
                bail!("null models need at least one seed");
            }
            if nulls.seeds.len() < 2 {
                bail!("null-model tests need at least two seeds");
            }
            if nulls.models.contains(&ModelName::Ws) && nulls.ws_rewire_probs.is_empty() {
                bail!("rewired-ring model needs at least one rewiring probability");
            }
            for &p in &nulls.ws_rewire_probs {
                if !(0.0..=1.0).contains(&p) {
                    bail!("rewiring probability {p} outside [0, 1]");
                }
            }
        }
        if let Some(workers) = self.workers {
            if workers == 0 {
                bail!("worker count must be at least 1");
            }
        }
        Ok(())
    }

    /// Hex SHA-256 over the canonical JSON serialization of every
    /// result-relevant field (`output_dir` and `workers` excluded).
    pub fn semantic_hash(&self) -> String {
        #[derive(Serialize)]
        struct HashView<'a> {
            input: &'a InputConfig,
            granularity: &'a GranularityName,
            periods: &'a Option<PeriodRange>,
            fields: &'a [String],
            networks: &'a [NetworkConfig],
            homology: &'a HomologyConfig,
            metrics: &'a [MetricName],
            null_models: &'a Option<NullModelConfig>,
            seed: u64,
            drop_isolates: bool,
        }
        let view = HashView {
            input: &self.input,
            granularity: &self.granularity,
            periods: &self.periods,
            fields: &self.fields,
            networks: &self.networks,
            homology: &self.homology,
            metrics: &self.metrics,
            null_models: &self.null_models,
            seed: self.seed,
            drop_isolates: self.drop_isolates,
        };
        let canonical = serde_json::to_string(&view).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    /// The task-grid periods when a range is configured; `None` defers to
    /// the periods observed in the input.
    pub fn grid_periods(&self) -> Option<Vec<i32>> {
        let range = self.periods?;
        let g = self.granularity.to_core();
        let mut periods = Vec::new();
        let mut p = range.start;
        while p <= range.end {
            periods.push(p);
            p = g.next(p);
        }
        Some(periods)
    }
}
