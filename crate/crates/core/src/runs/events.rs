use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eraser::{Detector, EraserExperiment, JointDistribution};
use crate::error::{Error, Result};
use crate::qcore::{ProbabilityMap, Sampler};
use crate::wheeler::{self, Scenario};

/// Experiment identifier as used on the command line and in event files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Experiment {
    Wheeler(Scenario),
    Eraser(EraserExperiment),
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::Wheeler(Scenario::Open),
        Experiment::Wheeler(Scenario::Closed),
        Experiment::Wheeler(Scenario::DelayedChoice),
        Experiment::Eraser(EraserExperiment::WhichPath),
        Experiment::Eraser(EraserExperiment::Erasing),
        Experiment::Eraser(EraserExperiment::Combined),
    ];

    pub fn is_eraser(self) -> bool {
        matches!(self, Experiment::Eraser(_))
    }

    /// Detector labels an event of this experiment may carry.
    pub fn detector_labels(self) -> Vec<String> {
        match self {
            Experiment::Wheeler(Scenario::DelayedChoice) => wheeler::joint_basis().labels(),
            Experiment::Wheeler(_) => wheeler::photon_basis().labels(),
            Experiment::Eraser(e) => e.detectors().iter().map(|d| d.to_string()).collect(),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Experiment::Wheeler(s) => write!(f, "wheeler{}", s.id()),
            Experiment::Eraser(e) => write!(f, "eraser{}", e.id()),
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Argument(format!(
                "unknown experiment {s:?}; expected wheeler1..3 or eraser1..3"
            ))
        };
        let (family, id) = if let Some(rest) = s.strip_prefix("wheeler") {
            ("wheeler", rest)
        } else if let Some(rest) = s.strip_prefix("eraser") {
            ("eraser", rest)
        } else {
            return Err(bad());
        };
        let id: u8 = id.parse().map_err(|_| bad())?;
        match family {
            "wheeler" => Scenario::try_from(id)
                .map(Experiment::Wheeler)
                .map_err(|_| bad()),
            _ => EraserExperiment::try_from(id)
                .map(Experiment::Eraser)
                .map_err(|_| bad()),
        }
    }
}

impl From<Experiment> for String {
    fn from(e: Experiment) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for Experiment {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A single sampled outcome before it is stamped with a run id.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub screen_bin: Option<usize>,
    pub x_position: Option<f64>,
    pub detector: String,
}

/// One run: where the signal landed (eraser only) and which detector fired.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub run_id: u64,
    pub experiment: Experiment,
    pub screen_bin: Option<usize>,
    pub x_position: Option<f64>,
    pub detector: String,
}

impl EventRecord {
    pub fn validate(&self) -> Result<()> {
        let has_screen = self.screen_bin.is_some() && self.x_position.is_some();
        let no_screen = self.screen_bin.is_none() && self.x_position.is_none();
        if self.experiment.is_eraser() && !has_screen {
            return Err(Error::Invariant(format!(
                "{} event {} lacks a screen bin",
                self.experiment, self.run_id
            )));
        }
        if !self.experiment.is_eraser() && !no_screen {
            return Err(Error::Invariant(format!(
                "{} event {} has a screen bin",
                self.experiment, self.run_id
            )));
        }
        if !self.experiment.detector_labels().contains(&self.detector) {
            return Err(Error::Invariant(format!(
                "detector {:?} is not part of {}",
                self.detector, self.experiment
            )));
        }
        Ok(())
    }
}

/// Final-state Born distribution of a Wheeler scenario as sampling outcomes.
pub fn wheeler_outcomes(scenario: Scenario) -> ProbabilityMap<Outcome> {
    let dist = wheeler::detector_distribution(scenario);
    let labels = dist
        .labels()
        .iter()
        .map(|l| Outcome {
            screen_bin: None,
            x_position: None,
            detector: l.clone(),
        })
        .collect();
    ProbabilityMap::new(labels, dist.probs().to_vec()).expect("labels and probabilities align")
}

/// Joint (bin, detector) law as sampling outcomes.
pub fn eraser_outcomes(joint: &JointDistribution) -> ProbabilityMap<Outcome> {
    let map = joint.to_probability_map();
    let labels = map
        .labels()
        .iter()
        .map(|o| Outcome {
            screen_bin: Some(o.bin),
            x_position: Some(joint.x[o.bin]),
            detector: o.detector.to_string(),
        })
        .collect();
    ProbabilityMap::new(labels, map.probs().to_vec()).expect("labels and probabilities align")
}

/// Draws `n_runs` independent outcomes. Run `i` uses stream `(seed, i)`, so
/// the result does not depend on thread count or evaluation order.
pub fn simulate_runs(
    experiment: Experiment,
    dist: &ProbabilityMap<Outcome>,
    n_runs: u64,
    seed: u64,
) -> Result<Vec<EventRecord>> {
    if n_runs == 0 {
        return Err(Error::Argument("n_runs must be at least 1".into()));
    }
    let sampler = Sampler::new(dist)?;
    let picks: Vec<usize> = (0..n_runs)
        .into_par_iter()
        .map(|run| sampler.sample(seed, run))
        .collect();
    Ok(picks
        .into_iter()
        .zip(0u64..)
        .map(|(idx, run_id)| {
            let o = &dist.labels()[idx];
            EventRecord {
                run_id,
                experiment,
                screen_bin: o.screen_bin,
                x_position: o.x_position,
                detector: o.detector.clone(),
            }
        })
        .collect())
}

/// Partitions events by detector label, keeping input order within each
/// group.
pub fn group_events(events: &[EventRecord]) -> BTreeMap<String, Vec<EventRecord>> {
    let mut groups: BTreeMap<String, Vec<EventRecord>> = BTreeMap::new();
    for e in events {
        groups
            .entry(e.detector.clone())
            .or_default()
            .push(e.clone());
    }
    groups
}

/// Events whose detector is `d`.
pub fn detector_group<'a>(
    events: &'a [EventRecord],
    d: Detector,
) -> impl Iterator<Item = &'a EventRecord> + 'a {
    events.iter().filter(move |e| e.detector == d.name())
}
