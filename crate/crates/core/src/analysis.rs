//! Analysis artifacts: per-mask-type tables, the masked-image baseline,
//! missing-fraction scatter series, and shared-subset run comparison.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifest::{MaskType, RunManifest};
use crate::metrics::{aggregate, masked_baseline_records, AggregateStats, MetricRecord};

/// Aggregates for one mask family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskTypeRow {
    pub psnr: AggregateStats,
    pub ssim: AggregateStats,
    pub mae: AggregateStats,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub plugins: BTreeMap<String, AggregateStats>,
}

/// Per-mask-type aggregate table; one row per mask family seen in the records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskTypeTable {
    pub rows: BTreeMap<MaskType, MaskTypeRow>,
}

/// Group records by mask type and aggregate every metric.
pub fn per_mask_type_table(records: &[MetricRecord]) -> Result<MaskTypeTable> {
    if records.is_empty() {
        return Err(Error::EmptyInput {
            context: "per_mask_type_table".into(),
        });
    }
    let mut groups: BTreeMap<MaskType, Vec<&MetricRecord>> = BTreeMap::new();
    for record in records {
        groups.entry(record.mask_type).or_default().push(record);
    }
    let mut rows = BTreeMap::new();
    for (mask_type, group) in groups {
        let collect = |f: fn(&MetricRecord) -> f64| -> Vec<f64> { group.iter().map(|r| f(r)).collect() };
        let mut plugins = BTreeMap::new();
        let names: BTreeSet<&String> = group.iter().flat_map(|r| r.plugin_values.keys()).collect();
        for name in names {
            let values: Vec<f64> = group
                .iter()
                .filter_map(|r| r.plugin_values.get(name).copied())
                .collect();
            plugins.insert(name.clone(), aggregate(&values)?);
        }
        // A run of perfect submissions leaves only +inf sentinels for PSNR;
        // the row then reports an all-excluded entry instead of failing.
        let psnr_values = collect(|r| r.psnr);
        let psnr_stats = if psnr_values.iter().all(|v| !v.is_finite()) {
            AggregateStats {
                mean: f64::INFINITY,
                std: 0.0,
                n: 0,
                excluded: psnr_values.len(),
            }
        } else {
            aggregate(&psnr_values)?
        };
        rows.insert(
            mask_type,
            MaskTypeRow {
                psnr: psnr_stats,
                ssim: aggregate(&collect(|r| r.ssim))?,
                mae: aggregate(&collect(|r| r.mae))?,
                plugins,
            },
        );
    }
    Ok(MaskTypeTable { rows })
}

/// The "degraded input vs ground truth" table for a manifest.
pub fn masked_baseline(manifest: &RunManifest, root: &Path) -> Result<MaskTypeTable> {
    per_mask_type_table(&masked_baseline_records(manifest, root)?)
}

fn table_plugin_columns(table: &MaskTypeTable) -> Vec<String> {
    let names: BTreeSet<&str> = table
        .rows
        .values()
        .flat_map(|row| row.plugins.keys().map(String::as_str))
        .collect();
    names.into_iter().map(str::to_owned).collect()
}

/// CSV form. Plug-in columns (sorted) come before psnr/ssim/mae, mirroring the
/// FID/LPIPS-first column order of the reporting convention.
pub fn table_to_csv(table: &MaskTypeTable) -> String {
    let plugins = table_plugin_columns(table);
    let mut out = String::from("mask_type,n");
    for name in &plugins {
        let _ = write!(out, ",{name}_mean,{name}_std");
    }
    out.push_str(",psnr_mean,psnr_std,psnr_excluded,ssim_mean,ssim_std,mae_mean,mae_std\n");
    for (mask_type, row) in &table.rows {
        let _ = write!(out, "{mask_type},{}", row.mae.n + row.mae.excluded);
        for name in &plugins {
            match row.plugins.get(name) {
                Some(stats) => {
                    let _ = write!(out, ",{},{}", stats.mean, stats.std);
                }
                None => out.push_str(",,"),
            }
        }
        let _ = writeln!(
            out,
            ",{},{},{},{},{},{},{}",
            row.psnr.mean,
            row.psnr.std,
            row.psnr.excluded,
            row.ssim.mean,
            row.ssim.std,
            row.mae.mean,
            row.mae.std
        );
    }
    out
}

/// Aligned plain-text form with `mean ± std` cells.
pub fn table_to_text(table: &MaskTypeTable) -> String {
    let plugins = table_plugin_columns(table);
    let mut headers: Vec<String> = vec!["mask type".into()];
    headers.extend(plugins.iter().map(|p| p.to_uppercase()));
    headers.extend(["PSNR", "SSIM", "MAE"].map(String::from));

    let fmt_cell = |stats: &AggregateStats| {
        if stats.excluded > 0 {
            format!(
                "{:.4} \u{b1} {:.4} ({} excl.)",
                stats.mean, stats.std, stats.excluded
            )
        } else {
            format!("{:.4} \u{b1} {:.4}", stats.mean, stats.std)
        }
    };
    let mut body: Vec<Vec<String>> = Vec::new();
    for (mask_type, row) in &table.rows {
        let mut cells = vec![mask_type.to_string()];
        for name in &plugins {
            cells.push(row.plugins.get(name).map(&fmt_cell).unwrap_or_default());
        }
        cells.push(fmt_cell(&row.psnr));
        cells.push(fmt_cell(&row.ssim));
        cells.push(fmt_cell(&row.mae));
        body.push(cells);
    }
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            body.iter()
                .map(|row| row[i].chars().count())
                .chain([h.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let render = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_owned()
    };
    let mut out = render(&headers);
    out.push('\n');
    for row in &body {
        out.push_str(&render(row));
        out.push('\n');
    }
    out
}

/// One plot-ready point of a missing-fraction scatter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub missing_fraction: f64,
    pub value: f64,
    pub mask_type: MaskType,
    pub image_id: String,
}

/// Metric value against missing fraction, one point per record, sorted by
/// fraction then image id.
pub fn scatter_series(records: &[MetricRecord], metric: &str) -> Result<Vec<ScatterPoint>> {
    let lookup = |record: &MetricRecord| -> Option<f64> {
        match metric {
            "psnr" => Some(record.psnr),
            "ssim" => Some(record.ssim),
            "mae" => Some(record.mae),
            other => record.plugin_values.get(other).copied(),
        }
    };
    let mut points = Vec::with_capacity(records.len());
    for record in records {
        let value = lookup(record).ok_or_else(|| {
            let mut known: Vec<&str> = vec!["psnr", "ssim", "mae"];
            known.extend(record.plugin_values.keys().map(String::as_str));
            Error::UnknownMetric {
                name: metric.to_owned(),
                known: known.join(", "),
            }
        })?;
        points.push(ScatterPoint {
            missing_fraction: record.missing_fraction,
            value,
            mask_type: record.mask_type,
            image_id: record.image_id.clone(),
        });
    }
    points.sort_by(|a, b| {
        a.missing_fraction
            .total_cmp(&b.missing_fraction)
            .then_with(|| a.image_id.cmp(&b.image_id))
    });
    Ok(points)
}

pub fn scatter_to_csv(points: &[ScatterPoint]) -> String {
    let mut out = String::from("missing_fraction,value,mask_type,image_id\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p.missing_fraction, p.value, p.mask_type, p.image_id
        );
    }
    out
}

/// One shared image scored by both runs, with run2 - run1 deltas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub image_id: String,
    pub run_a: MetricRecord,
    pub run_b: MetricRecord,
    pub deltas: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunComparison {
    pub rows: Vec<ComparisonRow>,
    /// Aggregate of each delta column over the shared subset.
    pub summary: BTreeMap<String, AggregateStats>,
}

/// Intersect two runs by image id and difference every metric (b - a).
pub fn compare_runs(run_a: &[MetricRecord], run_b: &[MetricRecord]) -> Result<RunComparison> {
    let by_id_b: BTreeMap<&str, &MetricRecord> =
        run_b.iter().map(|r| (r.image_id.as_str(), r)).collect();
    let mut rows = Vec::new();
    for a in run_a {
        let Some(&b) = by_id_b.get(a.image_id.as_str()) else {
            continue;
        };
        let mut deltas = BTreeMap::new();
        deltas.insert("psnr".to_owned(), b.psnr - a.psnr);
        deltas.insert("ssim".to_owned(), b.ssim - a.ssim);
        deltas.insert("mae".to_owned(), b.mae - a.mae);
        for (name, &va) in &a.plugin_values {
            if let Some(&vb) = b.plugin_values.get(name) {
                deltas.insert(name.clone(), vb - va);
            }
        }
        rows.push(ComparisonRow {
            image_id: a.image_id.clone(),
            run_a: a.clone(),
            run_b: b.clone(),
            deltas,
        });
    }
    if rows.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    rows.sort_by(|x, y| x.image_id.cmp(&y.image_id));
    let names: BTreeSet<String> = rows.iter().flat_map(|r| r.deltas.keys().cloned()).collect();
    let mut summary = BTreeMap::new();
    for name in names {
        let values: Vec<f64> = rows.iter().filter_map(|r| r.deltas.get(&name).copied()).collect();
        summary.insert(name, aggregate(&values)?);
    }
    Ok(RunComparison { rows, summary })
}

pub fn comparison_to_csv(comparison: &RunComparison) -> String {
    let names: BTreeSet<&str> = comparison
        .rows
        .iter()
        .flat_map(|r| r.deltas.keys().map(String::as_str))
        .collect();
    let names: Vec<&str> = names.into_iter().collect();
    let mut out = String::from("image_id");
    for name in &names {
        let _ = write!(out, ",delta_{name}");
    }
    out.push('\n');
    for row in &comparison.rows {
        out.push_str(&row.image_id);
        for name in &names {
            match row.deltas.get(*name) {
                Some(v) => {
                    let _ = write!(out, ",{v}");
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, mask_type: MaskType, psnr: f64, ssim: f64, mae: f64) -> MetricRecord {
        MetricRecord {
            image_id: id.into(),
            mask_type,
            missing_fraction: 0.3,
            psnr,
            ssim,
            mae,
            plugin_values: BTreeMap::new(),
        }
    }

    #[test]
    fn single_type_aggregation() {
        let records = vec![
            record("a", MaskType::Box, 10.0, 0.5, 0.1),
            record("b", MaskType::Box, 20.0, 0.7, 0.2),
        ];
        let table = per_mask_type_table(&records).unwrap();
        assert_eq!(table.rows.len(), 1);
        let row = &table.rows[&MaskType::Box];
        assert_eq!(row.psnr.mean, 15.0);
        assert_eq!(row.psnr.std, 5.0);
    }

    #[test]
    fn order_independence() {
        let mut records = vec![
            record("a", MaskType::Box, 10.0, 0.5, 0.1),
            record("b", MaskType::FreeForm, 20.0, 0.7, 0.2),
            record("c", MaskType::CellularAutomata, 15.0, 0.6, 0.15),
            record("d", MaskType::Box, 12.0, 0.55, 0.12),
        ];
        let table = per_mask_type_table(&records).unwrap();
        records.reverse();
        assert_eq!(per_mask_type_table(&records).unwrap(), table);
    }

    #[test]
    fn empty_records_rejected() {
        assert!(per_mask_type_table(&[]).is_err());
    }

    #[test]
    fn scatter_sorted_with_tie_break() {
        let mut records = vec![
            record("b", MaskType::Box, 10.0, 0.5, 0.1),
            record("a", MaskType::Box, 11.0, 0.5, 0.1),
            record("c", MaskType::FreeForm, 12.0, 0.5, 0.1),
        ];
        records[2].missing_fraction = 0.1;
        let points = scatter_series(&records, "psnr").unwrap();
        let ids: Vec<&str> = points.iter().map(|p| p.image_id.as_str()).collect();
        assert_eq!(ids, ["c", "a", "b"]);
        assert!(scatter_series(&records, "nope").is_err());
    }

    #[test]
    fn self_comparison_is_zero() {
        let records = vec![
            record("a", MaskType::Box, 10.0, 0.5, 0.1),
            record("b", MaskType::FreeForm, 20.0, 0.7, 0.2),
        ];
        let cmp = compare_runs(&records, &records).unwrap();
        assert_eq!(cmp.rows.len(), 2);
        for row in &cmp.rows {
            assert!(row.deltas.values().all(|&d| d == 0.0));
        }
        assert_eq!(cmp.summary["psnr"].mean, 0.0);
    }

    #[test]
    fn disjoint_runs_error() {
        let a = vec![record("a", MaskType::Box, 10.0, 0.5, 0.1)];
        let b = vec![record("b", MaskType::Box, 10.0, 0.5, 0.1)];
        assert!(matches!(compare_runs(&a, &b), Err(Error::EmptyIntersection)));
    }

    #[test]
    fn hand_built_delta_table() {
        let a = vec![
            record("w", MaskType::Box, 10.0, 0.50, 0.10),
            record("x", MaskType::Box, 12.0, 0.60, 0.08),
            record("y", MaskType::FreeForm, 14.0, 0.70, 0.06),
            record("z", MaskType::CellularAutomata, 16.0, 0.80, 0.04),
        ];
        let b = vec![
            record("w", MaskType::Box, 11.0, 0.55, 0.09),
            record("x", MaskType::Box, 14.0, 0.65, 0.06),
            record("y", MaskType::FreeForm, 13.0, 0.75, 0.05),
            record("z", MaskType::CellularAutomata, 20.0, 0.85, 0.02),
        ];
        let cmp = compare_runs(&a, &b).unwrap();
        let psnr_deltas: Vec<f64> = cmp.rows.iter().map(|r| r.deltas["psnr"]).collect();
        assert_eq!(psnr_deltas, vec![1.0, 2.0, -1.0, 4.0]);
        assert_eq!(cmp.summary["psnr"].mean, 1.5);
    }

    #[test]
    fn table_text_is_aligned() {
        let records = vec![
            record("a", MaskType::Box, 10.0, 0.5, 0.1),
            record("b", MaskType::FreeForm, 20.0, 0.7, 0.2),
        ];
        let table = per_mask_type_table(&records).unwrap();
        let text = table_to_text(&table);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].contains("PSNR"));
        let csv = table_to_csv(&table);
        assert!(csv.starts_with("mask_type,n,psnr_mean"));
    }
}
