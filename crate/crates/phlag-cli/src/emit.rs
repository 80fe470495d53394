//! CSV emitters. All files are UTF-8 with a header row; infinite values
//! are written as the literal `inf` (`-inf` when negative); cells for
//! quantities that were not computed (beyond a cap, or undefined) are
//! left empty — empty means missing, never zero.

use std::path::Path;

use anyhow::{Context, Result};
use phlag_core::{FlagFiltration, MeasureVector, PersistenceDiagram, WeightedGraph};

use crate::task::TaskKey;

/// Shortest-roundtrip decimal for a float; `inf`/`-inf` literals for
/// infinities.
pub fn fmt_f64(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        debug_assert!(!v.is_nan(), "CSV output must not contain NaN");
        format!("{v}")
    }
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("cannot create {}", parent.display()))?;
    }
    csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))
}

/// Network edge list: `source,target,weight` with original labels.
pub fn write_edge_list(path: &Path, g: &WeightedGraph) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["source", "target", "weight"])?;
    for e in g.edges() {
        w.write_record([
            g.symbols().label(e.source),
            g.symbols().label(e.target),
            &fmt_f64(e.weight),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Caps governing which columns hold values versus stay empty.
#[derive(Debug, Clone, Copy)]
pub struct EmitCaps {
    /// Highest computed homology dimension; β columns above it are empty.
    pub homology_cap: usize,
    /// Highest enumerated cell dimension; Δ columns above it are empty.
    pub dimension_cap: usize,
}

/// One Betti table row.
pub struct BettiRow<'a> {
    /// Grid cell.
    pub key: &'a TaskKey,
    /// β_0.. as computed.
    pub betti: &'a [u64],
    /// Δ_0.. as enumerated.
    pub cells: &'a [u64],
}

/// Betti table: `field,period,kind,beta0..beta3,delta0..delta4`.
pub fn write_betti(path: &Path, rows: &[BettiRow<'_>], caps: EmitCaps) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record([
        "field", "period", "kind", "beta0", "beta1", "beta2", "beta3", "delta0", "delta1",
        "delta2", "delta3", "delta4",
    ])?;
    for row in rows {
        let mut record = vec![
            row.key.field.clone(),
            row.key.period.to_string(),
            row.key.kind_label().to_string(),
        ];
        for k in 0..=3usize {
            record.push(if k <= caps.homology_cap {
                row.betti.get(k).copied().unwrap_or(0).to_string()
            } else {
                String::new()
            });
        }
        for k in 0..=4usize {
            record.push(if k <= caps.dimension_cap {
                row.cells.get(k).copied().unwrap_or(0).to_string()
            } else {
                String::new()
            });
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Persistence diagram: `dimension,birth,death` with `inf` deaths.
pub fn write_diagram(path: &Path, diagram: &PersistenceDiagram) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["dimension", "birth", "death"])?;
    for p in diagram.points() {
        w.write_record([p.dimension.to_string(), fmt_f64(p.birth), fmt_f64(p.death)])?;
    }
    w.flush()?;
    Ok(())
}

/// Filtration dump in canonical order:
/// `dimension,filtration_value,v0,v1,...` padded to the dimension cap.
pub fn write_filtration(path: &Path, f: &FlagFiltration) -> Result<()> {
    let mut w = writer(path)?;
    let mut header = vec!["dimension".to_string(), "filtration_value".to_string()];
    for i in 0..=f.dimension_cap() {
        header.push(format!("v{i}"));
    }
    w.write_record(&header)?;
    for s in f.simplices() {
        let mut record = vec![s.dimension().to_string(), fmt_f64(s.filtration_value())];
        for i in 0..=f.dimension_cap() {
            record.push(s.vertices().get(i).map(|v| v.to_string()).unwrap_or_default());
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// One pairwise diagram-distance row.
pub struct DistanceRow {
    /// First network's field.
    pub field_a: String,
    /// First network's period.
    pub period_a: i32,
    /// Second network's field.
    pub field_b: String,
    /// Second network's period.
    pub period_b: i32,
    /// Homology dimension compared.
    pub dimension: usize,
    /// Metric label.
    pub metric: &'static str,
    /// The distance; `inf` when essential counts differ.
    pub distance: f64,
}

/// Distance table: `field_a,period_a,field_b,period_b,dimension,metric,distance`.
pub fn write_distances(path: &Path, rows: &[DistanceRow]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["field_a", "period_a", "field_b", "period_b", "dimension", "metric", "distance"])?;
    for row in rows {
        w.write_record([
            row.field_a.clone(),
            row.period_a.to_string(),
            row.field_b.clone(),
            row.period_b.to_string(),
            row.dimension.to_string(),
            row.metric.to_string(),
            fmt_f64(row.distance),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One knowledge-vs-collaboration comparison row.
pub struct KindDistanceRow {
    /// Field whose two network kinds are compared.
    pub field: String,
    /// Period.
    pub period: i32,
    /// Homology dimension compared.
    pub dimension: usize,
    /// Metric label.
    pub metric: &'static str,
    /// Distance between the field's knowledge and collaboration diagrams.
    pub distance: f64,
}

/// Within-field knowledge-vs-collaboration distances:
/// `field,period,dimension,metric,distance`.
pub fn write_kind_distances(path: &Path, rows: &[KindDistanceRow]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["field", "period", "dimension", "metric", "distance"])?;
    for row in rows {
        w.write_record([
            row.field.clone(),
            row.period.to_string(),
            row.dimension.to_string(),
            row.metric.to_string(),
            fmt_f64(row.distance),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One per-period mean-divergence row.
pub struct DivergenceRow {
    /// Period the mean covers.
    pub period: i32,
    /// Network kind compared across fields.
    pub kind: &'static str,
    /// Homology dimension.
    pub dimension: usize,
    /// Metric label.
    pub metric: &'static str,
    /// Mean over finite pairs; `None` when every pair was infinite.
    pub mean: Option<f64>,
    /// Count of finite unordered pairs.
    pub finite_pairs: usize,
    /// Count of infinite pairs (mismatched essential classes).
    pub infinite_pairs: usize,
}

/// Mean cross-field divergence per period:
/// `period,kind,dimension,metric,mean_distance,finite_pairs,infinite_pairs`.
pub fn write_divergence(path: &Path, rows: &[DivergenceRow]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["period", "kind", "dimension", "metric", "mean_distance", "finite_pairs", "infinite_pairs"])?;
    for row in rows {
        w.write_record([
            row.period.to_string(),
            row.kind.to_string(),
            row.dimension.to_string(),
            row.metric.to_string(),
            row.mean.map(fmt_f64).unwrap_or_default(),
            row.finite_pairs.to_string(),
            row.infinite_pairs.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One null-model instance row (t/p repeat the per-group test).
pub struct NullRow {
    /// Field of the reference network.
    pub field: String,
    /// Period of the reference network.
    pub period: i32,
    /// Model label.
    pub model: &'static str,
    /// Model parameter (rewiring probability); empty for ER/BA.
    pub param: Option<f64>,
    /// Instance seed as listed in the configuration.
    pub seed: u64,
    /// β_0..β_3 of this instance (`None` above the homology cap).
    pub betti: [Option<u64>; 4],
    /// Group t statistics per dimension.
    pub t: [Option<f64>; 4],
    /// Group p-values per dimension.
    pub p: [Option<f64>; 4],
}

/// Null-model report:
/// `field,period,model,param,seed,beta0..beta3,t0..t3,p0..p3`.
pub fn write_null_report(path: &Path, rows: &[NullRow]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record([
        "field", "period", "model", "param", "seed", "beta0", "beta1", "beta2", "beta3", "t0",
        "t1", "t2", "t3", "p0", "p1", "p2", "p3",
    ])?;
    for row in rows {
        let mut record = vec![
            row.field.clone(),
            row.period.to_string(),
            row.model.to_string(),
            row.param.map(fmt_f64).unwrap_or_default(),
            row.seed.to_string(),
        ];
        record.extend(row.betti.iter().map(|b| b.map(|v| v.to_string()).unwrap_or_default()));
        record.extend(row.t.iter().map(|t| t.map(fmt_f64).unwrap_or_default()));
        record.extend(row.p.iter().map(|p| p.map(fmt_f64).unwrap_or_default()));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// One long-format time-series row.
pub struct TimeseriesRow {
    /// `subfield` for raw rows, `field` for rollup means.
    pub level: &'static str,
    /// Subfield or rolled-up field label.
    pub field: String,
    /// Period.
    pub period: i32,
    /// Series name: `beta0..beta3` or `delta0..delta4`.
    pub series: String,
    /// Count (subfield level) or unweighted mean (field level).
    pub value: f64,
}

/// Plot-ready long table: `level,field,period,series,value`.
pub fn write_timeseries(path: &Path, rows: &[TimeseriesRow]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["level", "field", "period", "series", "value"])?;
    for row in rows {
        w.write_record([
            row.level.to_string(),
            row.field.clone(),
            row.period.to_string(),
            row.series.clone(),
            fmt_f64(row.value),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Classical measures table:
/// `field,period,kind,node_count,edge_count,density,average_clustering,global_efficiency,degree_assortativity,bridge_count,isolate_count`.
pub fn write_measures(path: &Path, rows: &[(&TaskKey, &MeasureVector)]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record([
        "field", "period", "kind", "node_count", "edge_count", "density", "average_clustering",
        "global_efficiency", "degree_assortativity", "bridge_count", "isolate_count",
    ])?;
    for (key, m) in rows {
        w.write_record([
            key.field.clone(),
            key.period.to_string(),
            key.kind_label().to_string(),
            m.node_count.to_string(),
            m.edge_count.to_string(),
            fmt_f64(m.density),
            fmt_f64(m.average_clustering),
            fmt_f64(m.global_efficiency),
            m.degree_assortativity.map(fmt_f64).unwrap_or_default(),
            m.bridge_count.to_string(),
            m.isolate_count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One topology-vs-measure correlation row.
pub struct CorrelationRow {
    /// Field whose per-period series were correlated.
    pub field: String,
    /// Network kind.
    pub kind: &'static str,
    /// Betti dimension of the topology series.
    pub dimension: usize,
    /// Measure name.
    pub measure: &'static str,
    /// `pearson` or `spearman`.
    pub method: &'static str,
    /// The correlation coefficient.
    pub value: f64,
    /// Periods entering the correlation.
    pub observations: usize,
}

/// Correlation table:
/// `field,kind,dimension,measure,method,value,observations`.
pub fn write_correlations(path: &Path, rows: &[CorrelationRow]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["field", "kind", "dimension", "measure", "method", "value", "observations"])?;
    for row in rows {
        w.write_record([
            row.field.clone(),
            row.kind.to_string(),
            row.dimension.to_string(),
            row.measure.to_string(),
            row.method.to_string(),
            fmt_f64(row.value),
            row.observations.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_uses_inf_literals() {
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.3333333333333333");
        assert_eq!(fmt_f64(2.0), "2");
    }

    #[test]
    fn betti_rows_leave_uncapped_columns_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("betti.csv");
        let key = TaskKey {
            field: "f".into(),
            period: 2000,
            kind: crate::config::KindName::Knowledge,
            window: 1,
        };
        let rows = [BettiRow { key: &key, betti: &[1, 2], cells: &[4, 4] }];
        write_betti(&path, &rows, EmitCaps { homology_cap: 1, dimension_cap: 2 }).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "field,period,kind,beta0,beta1,beta2,beta3,delta0,delta1,delta2,delta3,delta4"
        );
        // beta2/beta3 and delta3/delta4 are uncomputed → empty, not zero;
        // delta2 is computed and genuinely zero
        assert_eq!(lines.next().unwrap(), "f,2000,knowledge,1,2,,,4,4,0,,");
    }

    #[test]
    fn diagram_rows_write_inf_deaths() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let diagram = PersistenceDiagram::from_points(
            vec![
                phlag_core::PersistencePoint { dimension: 0, birth: 0.0, death: f64::INFINITY },
                phlag_core::PersistencePoint { dimension: 1, birth: 0.25, death: 0.5 },
            ],
            1,
        );
        write_diagram(&path, &diagram).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "dimension,birth,death\n0,0,inf\n1,0.25,0.5\n");
    }

    #[test]
    fn edge_list_uses_labels() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("net.csv");
        let g = WeightedGraph::from_labeled_edges([("B", "A", 2.0), ("A", "C", 1.0)]).unwrap();
        write_edge_list(&path, &g).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "source,target,weight\nB,A,2\nA,C,1\n");
    }

    #[test]
    fn filtration_dump_pads_vertex_columns() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("filt.csv");
        let g = WeightedGraph::from_labeled_edges([("a", "b", 2.0)]).unwrap();
        let f = phlag_core::enumerate_flag_complex(&g, 2).unwrap();
        write_filtration(&path, &f).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "dimension,filtration_value,v0,v1,v2\n0,0,0,,\n0,0,1,,\n1,0.5,0,1,\n"
        );
    }
}
