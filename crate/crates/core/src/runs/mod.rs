//! Seeded Monte Carlo runs, detector grouping, histograms and the statistics
//! used to judge them.

mod events;
mod histogram;
mod stats;

pub use events::{
    detector_group, eraser_outcomes, group_events, simulate_runs, wheeler_outcomes, EventRecord,
    Experiment, Outcome,
};
pub use histogram::{
    bin_probabilities, expected_envelope, group_histograms, histogram, screen_edges, uniform_edges,
    Histogram, ALL_GROUP,
};
pub use stats::{
    chi_square_counts, chi_square_gof, fringe_region, normalized_counts, peak_alignment,
    visibility, ChiSquare, PeakAlignment, Visibility, MIN_EXPECTED_COUNT,
};

/// Runs per acceptance-scale simulation.
pub const ACCEPTANCE_RUNS: u64 = 100_000;
/// Runs per smoke test.
pub const SMOKE_RUNS: u64 = 1_000;
/// Histogram bins across the screen span.
pub const DEFAULT_HISTOGRAM_BINS: usize = 64;
