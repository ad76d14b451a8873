use serde::Serialize;

use super::events::EventRecord;
use crate::eraser::{EraserConfig, JointDistribution};
use crate::error::{Error, Result};

pub const ALL_GROUP: &str = "ALL";

/// Screen-position counts for one detector group (or `ALL`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub group: String,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        self.bin_edges
            .windows(2)
            .map(|w| (w[0] + w[1]) / 2.0)
            .collect()
    }

    pub fn span(&self) -> (f64, f64) {
        (self.bin_edges[0], self.bin_edges[self.bin_edges.len() - 1])
    }
}

/// `bins + 1` equally spaced edges over `[lo, hi]`.
pub fn uniform_edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    let w = (hi - lo) / bins as f64;
    (0..=bins)
        .map(|i| if i == bins { hi } else { lo + i as f64 * w })
        .collect()
}

fn check_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::Argument("need at least two bin edges".into()));
    }
    if !edges.iter().all(|e| e.is_finite()) || edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument(
            "bin edges must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Bin of `x`; the last bin is closed on the right.
fn bin_of(edges: &[f64], x: f64) -> Result<usize> {
    let (lo, hi) = (edges[0], edges[edges.len() - 1]);
    if !(x >= lo && x <= hi) {
        return Err(Error::Overflow { value: x, lo, hi });
    }
    let upper = edges.partition_point(|&e| e <= x);
    Ok((upper.max(1) - 1).min(edges.len() - 2))
}

/// Counts the events' screen positions.
pub fn histogram<'a>(
    group: impl Into<String>,
    events: impl IntoIterator<Item = &'a EventRecord>,
    bin_edges: &[f64],
) -> Result<Histogram> {
    check_edges(bin_edges)?;
    let mut counts = vec![0u64; bin_edges.len() - 1];
    for e in events {
        let x = e
            .x_position
            .ok_or_else(|| Error::Argument(format!("event {} has no screen position", e.run_id)))?;
        counts[bin_of(bin_edges, x)?] += 1;
    }
    Ok(Histogram {
        group: group.into(),
        bin_edges: bin_edges.to_vec(),
        counts,
    })
}

/// Uniform edges over the screen span of `cfg`.
pub fn screen_edges(cfg: &EraserConfig, bins: usize) -> Vec<f64> {
    let (lo, hi) = cfg.screen_span();
    uniform_edges(lo, hi, bins)
}

/// The `ALL` histogram followed by one histogram per detector label, in the
/// order given.
pub fn group_histograms(
    events: &[EventRecord],
    detectors: &[String],
    bin_edges: &[f64],
) -> Result<Vec<Histogram>> {
    let mut out = vec![histogram(ALL_GROUP, events, bin_edges)?];
    for d in detectors {
        out.push(histogram(
            d.clone(),
            events.iter().filter(|e| &e.detector == d),
            bin_edges,
        )?);
    }
    Ok(out)
}

/// Expected fraction of all events per histogram bin: the detector-summed
/// screen marginal, binned.
pub fn expected_envelope(joint: &JointDistribution, bin_edges: &[f64]) -> Result<Vec<f64>> {
    bin_probabilities(&joint.x, &joint.screen_marginal, bin_edges)
}

/// Sums per-position probabilities into histogram bins.
pub fn bin_probabilities(positions: &[f64], probs: &[f64], bin_edges: &[f64]) -> Result<Vec<f64>> {
    check_edges(bin_edges)?;
    if positions.len() != probs.len() {
        return Err(Error::Shape(format!(
            "{} positions vs {} probabilities",
            positions.len(),
            probs.len()
        )));
    }
    let mut out = vec![0.0; bin_edges.len() - 1];
    for (&x, &p) in positions.iter().zip(probs) {
        out[bin_of(bin_edges, x)?] += p;
    }
    Ok(out)
}
