//! CSV and canonical JSON serialization of metric records.
//!
//! CSV header: `image_id,mask_type,missing_fraction,psnr,ssim,mae` followed by
//! one column per plug-in metric (sorted by name). A perfect-score PSNR is
//! written as `inf`; a plug-in value absent for a record is an empty field.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::MetricRecord;

const FIXED_COLUMNS: [&str; 6] = [
    "image_id",
    "mask_type",
    "missing_fraction",
    "psnr",
    "ssim",
    "mae",
];

/// Sorted union of the plug-in metric names present across records.
pub fn plugin_columns(records: &[MetricRecord]) -> Vec<String> {
    let names: BTreeSet<&str> = records
        .iter()
        .flat_map(|r| r.plugin_values.keys().map(String::as_str))
        .collect();
    names.into_iter().map(str::to_owned).collect()
}

pub fn records_to_csv(records: &[MetricRecord]) -> String {
    let plugins = plugin_columns(records);
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = FIXED_COLUMNS
        .iter()
        .copied()
        .chain(plugins.iter().map(String::as_str))
        .collect();
    writer.write_record(&header).expect("in-memory write");
    for record in records {
        let mut row = vec![
            record.image_id.clone(),
            record.mask_type.to_string(),
            record.missing_fraction.to_string(),
            record.psnr.to_string(),
            record.ssim.to_string(),
            record.mae.to_string(),
        ];
        for name in &plugins {
            row.push(
                record
                    .plugin_values
                    .get(name)
                    .map(f64::to_string)
                    .unwrap_or_default(),
            );
        }
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn records_from_csv(text: &str) -> Result<Vec<MetricRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::InvalidRecords {
            detail: e.to_string(),
        })?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.len() < FIXED_COLUMNS.len()
        || header[..FIXED_COLUMNS.len()] != FIXED_COLUMNS[..]
    {
        return Err(Error::InvalidRecords {
            detail: format!("unexpected header: {}", header.join(",")),
        });
    }
    let plugins = &header[FIXED_COLUMNS.len()..];
    let parse_f64 = |field: &str, what: &str| -> Result<f64> {
        field.parse().map_err(|_| Error::InvalidRecords {
            detail: format!("bad {what} value '{field}'"),
        })
    };
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::InvalidRecords {
            detail: e.to_string(),
        })?;
        if row.len() != header.len() {
            return Err(Error::InvalidRecords {
                detail: format!("row has {} fields, expected {}", row.len(), header.len()),
            });
        }
        let mut record = MetricRecord {
            image_id: row[0].to_owned(),
            mask_type: row[1].parse()?,
            missing_fraction: parse_f64(&row[2], "missing_fraction")?,
            psnr: parse_f64(&row[3], "psnr")?,
            ssim: parse_f64(&row[4], "ssim")?,
            mae: parse_f64(&row[5], "mae")?,
            plugin_values: Default::default(),
        };
        for (name, field) in plugins.iter().zip(row.iter().skip(FIXED_COLUMNS.len())) {
            if !field.is_empty() {
                record
                    .plugin_values
                    .insert(name.clone(), parse_f64(field, name)?);
            }
        }
        records.push(record);
    }
    Ok(records)
}

pub fn write_records_csv(records: &[MetricRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, records_to_csv(records)).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_records_csv(path: impl AsRef<Path>) -> Result<Vec<MetricRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    records_from_csv(&text)
}

/// Canonical JSON form (sorted keys, trailing newline), for golden diffs.
pub fn records_to_json(records: &[MetricRecord]) -> String {
    let value = serde_json::to_value(records).expect("records serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}
