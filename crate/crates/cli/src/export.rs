use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use dcsim_core::eraser::JointDistribution;
use dcsim_core::{EventRecord, Histogram};
use serde::Serialize;

use crate::failure::{io_failure, Failure};

pub const EVENTS_HEADER: [&str; 5] = [
    "run_id",
    "experiment",
    "screen_bin",
    "x_position",
    "detector",
];
pub const HISTOGRAM_HEADER: [&str; 6] = [
    "group",
    "bin",
    "lower_edge",
    "upper_edge",
    "center",
    "count",
];
pub const ANALYTIC_HEADER: [&str; 4] = ["bin", "x_position", "detector", "probability"];

/// Output encoding for event and analytic files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_failure(path, e))
}

fn write_csv<T: Serialize>(
    path: &Path,
    header: &[&str],
    rows: impl IntoIterator<Item = T>,
) -> Result<(), Failure> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(create(path)?);
    let fail = |e: csv::Error| io_failure(path, e);
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.serialize(row).map_err(fail)?;
    }
    w.flush().map_err(|e| io_failure(path, e))
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| io_failure(path, e))?;
    w.write_all(b"\n")
        .and_then(|_| w.flush())
        .map_err(|e| io_failure(path, e))
}

/// Events as CSV with the fixed [`EVENTS_HEADER`] column order, or as a JSON
/// array of objects with the same field names.
pub fn write_events(path: &Path, events: &[EventRecord], format: Format) -> Result<(), Failure> {
    match format {
        Format::Csv => write_csv(path, &EVENTS_HEADER, events),
        Format::Json => write_json(path, events),
    }
}

#[derive(Serialize)]
struct HistogramRow<'a> {
    group: &'a str,
    bin: usize,
    lower_edge: f64,
    upper_edge: f64,
    center: f64,
    count: u64,
}

/// All histograms in long format, one row per (group, bin).
pub fn write_histograms(path: &Path, hists: &[Histogram]) -> Result<(), Failure> {
    let rows = hists.iter().flat_map(|h| {
        h.counts.iter().enumerate().map(move |(bin, &count)| {
            let (lo, hi) = (h.bin_edges[bin], h.bin_edges[bin + 1]);
            HistogramRow {
                group: &h.group,
                bin,
                lower_edge: lo,
                upper_edge: hi,
                center: (lo + hi) / 2.0,
                count,
            }
        })
    });
    write_csv(path, &HISTOGRAM_HEADER, rows)
}

#[derive(Serialize)]
struct AnalyticRow {
    bin: usize,
    x_position: f64,
    detector: String,
    probability: f64,
}

fn analytic_rows(joint: &JointDistribution) -> Vec<AnalyticRow> {
    joint
        .entries()
        .into_iter()
        .map(|e| AnalyticRow {
            bin: e.bin,
            x_position: e.x_position,
            detector: e.detector.to_string(),
            probability: e.probability,
        })
        .collect()
}

/// `(bin, x_position, detector, probability)` for every bin and detector.
pub fn write_analytic(
    path: &Path,
    joint: &JointDistribution,
    format: Format,
) -> Result<(), Failure> {
    let rows = analytic_rows(joint);
    match format {
        Format::Csv => write_csv(path, &ANALYTIC_HEADER, rows),
        Format::Json => write_json(path, &rows),
    }
}

/// Wide table for plotting: one row per bin with `x_position`, a column per
/// detector group and the detector-summed `ALL` curve.
pub fn write_plot_data(path: &Path, joint: &JointDistribution) -> Result<(), Failure> {
    let mut header = vec!["bin".to_string(), "x_position".to_string()];
    header.extend(joint.detectors.iter().map(|d| d.to_string()));
    header.push(dcsim_core::runs::ALL_GROUP.to_string());

    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(create(path)?);
    let fail = |e: csv::Error| io_failure(path, e);
    w.write_record(&header).map_err(fail)?;
    let summed = joint.detector_summed();
    for (k, all) in summed.iter().enumerate() {
        let mut row = vec![k.to_string(), format!("{:?}", joint.x[k])];
        row.extend((0..joint.detectors.len()).map(|j| format!("{:?}", joint.p(k, j))));
        row.push(format!("{all:?}"));
        w.write_record(&row).map_err(fail)?;
    }
    w.flush().map_err(|e| io_failure(path, e))
}
