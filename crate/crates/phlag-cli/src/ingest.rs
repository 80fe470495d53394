//! Record ingestion: JSON Lines or a CSV trio (works manifest plus
//! per-work code/author lists), plus the optional subfield→field rollup
//! table used for time-series aggregation.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use phlag_core::PublicationRecord;
use serde::Deserialize;

use crate::config::InputConfig;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordLine {
    work_id: String,
    period: i32,
    field: String,
    #[serde(default)]
    codes: Vec<String>,
    #[serde(default)]
    authors: Vec<String>,
}

/// Reads records from whichever source the input section configures.
pub fn read_records(input: &InputConfig) -> Result<Vec<PublicationRecord>> {
    if let Some(path) = &input.records {
        read_jsonl(path)
    } else {
        let works = input
            .works
            .as_ref()
            .context("CSV input needs a works manifest")?;
        read_csv_trio(works, input.codes.as_deref(), input.authors.as_deref())
    }
}

/// One record object per line; blank lines are permitted and skipped.
pub fn read_jsonl(path: &Path) -> Result<Vec<PublicationRecord>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read records {}", path.display()))?;
    let mut records = Vec::new();
    for (number, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed: RecordLine = serde_json::from_str(line)
            .with_context(|| format!("{}:{}: bad record", path.display(), number + 1))?;
        if parsed.work_id.is_empty() {
            bail!("{}:{}: empty work_id", path.display(), number + 1);
        }
        records.push(PublicationRecord::new(
            parsed.work_id,
            parsed.period,
            parsed.field,
            parsed.codes,
            parsed.authors,
        ));
    }
    Ok(records)
}

/// Joins `work_id,period,field` with per-work `work_id,code` and
/// `work_id,author` lists. Every code/author row must reference a work
/// from the manifest; list order follows file order.
pub fn read_csv_trio(
    works: &Path,
    codes: Option<&Path>,
    authors: Option<&Path>,
) -> Result<Vec<PublicationRecord>> {
    #[derive(Deserialize)]
    struct WorkRow {
        work_id: String,
        period: i32,
        field: String,
    }
    #[derive(Deserialize)]
    struct ItemRow {
        work_id: String,
        #[serde(alias = "code", alias = "author")]
        item: String,
    }

    let mut order: Vec<(String, i32, String)> = Vec::new();
    let mut slot: BTreeMap<String, usize> = BTreeMap::new();
    let mut reader = open_csv(works)?;
    for row in reader.deserialize() {
        let row: WorkRow = row.with_context(|| format!("bad row in {}", works.display()))?;
        if row.work_id.is_empty() {
            bail!("{}: empty work_id", works.display());
        }
        if slot.contains_key(&row.work_id) {
            bail!("{}: duplicate work_id {:?}", works.display(), row.work_id);
        }
        slot.insert(row.work_id.clone(), order.len());
        order.push((row.work_id, row.period, row.field));
    }

    let mut code_lists: Vec<Vec<String>> = vec![Vec::new(); order.len()];
    let mut author_lists: Vec<Vec<String>> = vec![Vec::new(); order.len()];
    for (path, lists) in [(codes, &mut code_lists), (authors, &mut author_lists)] {
        let Some(path) = path else { continue };
        let mut reader = open_csv(path)?;
        for row in reader.deserialize() {
            let row: ItemRow = row.with_context(|| format!("bad row in {}", path.display()))?;
            let &index = slot.get(&row.work_id).with_context(|| {
                format!("{}: work_id {:?} missing from the works manifest", path.display(), row.work_id)
            })?;
            lists[index].push(row.item);
        }
    }

    Ok(order
        .into_iter()
        .zip(code_lists)
        .zip(author_lists)
        .map(|(((work_id, period, field), codes), authors)| {
            PublicationRecord::new(work_id, period, field, codes, authors)
        })
        .collect())
}

/// Reads the optional `subfield,field` rollup table.
pub fn read_field_rollup(path: &Path) -> Result<BTreeMap<String, String>> {
    #[derive(Deserialize)]
    struct RollupRow {
        subfield: String,
        field: String,
    }
    let mut rollup = BTreeMap::new();
    let mut reader = open_csv(path)?;
    for row in reader.deserialize() {
        let row: RollupRow = row.with_context(|| format!("bad row in {}", path.display()))?;
        if let Some(previous) = rollup.insert(row.subfield.clone(), row.field) {
            bail!(
                "{}: subfield {:?} mapped twice (first to {:?})",
                path.display(),
                row.subfield,
                previous
            );
        }
    }
    Ok(rollup)
}

fn open_csv(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))
}
