use std::ops::Range;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::histogram::Histogram;
use crate::error::{Error, Result};

/// Fringe visibility and the bins it was measured on.
#[derive(Debug, Clone, PartialEq)]
pub struct Visibility {
    pub value: f64,
    pub region: Range<usize>,
}

/// Bins whose centres lie in the middle half of the histogram span.
pub fn fringe_region(h: &Histogram) -> Range<usize> {
    let (lo, hi) = h.span();
    let quarter = (hi - lo) / 4.0;
    let centers = h.bin_centers();
    let start = centers.partition_point(|&c| c < lo + quarter);
    let end = centers.partition_point(|&c| c <= hi - quarter);
    start..end
}

/// Counts divided by the expected envelope counts over the fringe region.
pub fn normalized_counts(h: &Histogram, envelope: &[f64]) -> Result<(Range<usize>, Vec<f64>)> {
    if envelope.len() != h.n_bins() {
        return Err(Error::Shape(format!(
            "{} envelope values for {} bins",
            envelope.len(),
            h.n_bins()
        )));
    }
    if h.total() == 0 {
        return Err(Error::Argument(format!("histogram {} is empty", h.group)));
    }
    let region = fringe_region(h);
    if region.is_empty() {
        return Err(Error::Argument("fringe region contains no bins".into()));
    }
    let ratios = region
        .clone()
        .map(|b| {
            if envelope[b] > 0.0 {
                Ok(h.counts[b] as f64 / envelope[b])
            } else {
                Err(Error::Argument(format!(
                    "envelope is not positive in bin {b}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((region, ratios))
}

/// `(max − min) / (max + min)` of the envelope-normalized counts over the
/// central half of the span.
pub fn visibility(h: &Histogram, envelope: &[f64]) -> Result<Visibility> {
    let (region, ratios) = normalized_counts(h, envelope)?;
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    if max + min == 0.0 {
        return Err(Error::Argument(format!(
            "histogram {} has no counts in the fringe region",
            h.group
        )));
    }
    Ok(Visibility {
        value: (max - min) / (max + min),
        region,
    })
}

/// Where one group's brightest fringe sits relative to another group's
/// pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakAlignment {
    /// Bin of the first group's normalized maximum.
    pub peak_bin: usize,
    /// Local minima of the second group within one bin of `peak_bin`.
    pub minima_nearby: Vec<usize>,
}

impl PeakAlignment {
    pub fn anti_aligned(&self) -> bool {
        !self.minima_nearby.is_empty()
    }
}

/// Locates `peaked`'s brightest normalized bin and the local minima of
/// `other` within one bin of it. Both histograms must share their edges.
pub fn peak_alignment(
    peaked: &Histogram,
    other: &Histogram,
    envelope: &[f64],
) -> Result<PeakAlignment> {
    if peaked.bin_edges != other.bin_edges {
        return Err(Error::Argument("histograms use different bin edges".into()));
    }
    let (region, a) = normalized_counts(peaked, envelope)?;
    let (_, b) = normalized_counts(other, envelope)?;
    let peak = (0..a.len())
        .max_by(|&i, &j| a[i].total_cmp(&a[j]))
        .expect("region is non-empty");
    let is_local_min = |j: usize| {
        let left = j == 0 || b[j] <= b[j - 1];
        let right = j + 1 == b.len() || b[j] <= b[j + 1];
        left && right
    };
    let minima_nearby = (peak.saturating_sub(1)..=(peak + 1).min(b.len() - 1))
        .filter(|&j| is_local_min(j))
        .map(|j| j + region.start)
        .collect();
    Ok(PeakAlignment {
        peak_bin: peak + region.start,
        minima_nearby,
    })
}

/// Pearson goodness-of-fit result.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Bins are pooled left to right until each pool expects at least this many
/// counts.
pub const MIN_EXPECTED_COUNT: f64 = 5.0;

pub fn chi_square_gof(h: &Histogram, expected: &[f64], n: u64) -> Result<ChiSquare> {
    chi_square_counts(&h.counts, expected, n)
}

/// Chi-square test of observed counts against per-bin probabilities.
pub fn chi_square_counts(counts: &[u64], expected: &[f64], n: u64) -> Result<ChiSquare> {
    if counts.len() != expected.len() {
        return Err(Error::Shape(format!(
            "{} bins vs {} expected probabilities",
            counts.len(),
            expected.len()
        )));
    }
    let total: f64 = expected.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Distribution(format!(
            "expected probabilities sum to {total}"
        )));
    }
    let n = n as f64;

    let mut pools: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (&c, &p) in counts.iter().zip(expected) {
        obs += c as f64;
        exp += p * n;
        if exp >= MIN_EXPECTED_COUNT {
            pools.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if obs > 0.0 || exp > 0.0 {
        match pools.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += exp;
            }
            None => pools.push((obs, exp)),
        }
    }
    if pools.len() < 2 {
        return Err(Error::DegenerateTest(format!(
            "only {} bin(s) left after pooling",
            pools.len()
        )));
    }

    let statistic: f64 = pools.iter().map(|&(o, e)| (o - e).powi(2) / e).sum();
    let dof = pools.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::DegenerateTest(e.to_string()))?;
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: dist.sf(statistic),
    })
}
