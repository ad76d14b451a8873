use serde::Serialize;

use super::state::{QuantumState, StateKind};
use crate::error::{Error, Result};

/// Probabilities over an ordered set of outcome labels. Label order is the
/// order the sampler walks when inverting the CDF.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityMap<L = String> {
    labels: Vec<L>,
    probs: Vec<f64>,
}

impl<L> ProbabilityMap<L> {
    pub fn new(labels: Vec<L>, probs: Vec<f64>) -> Result<Self> {
        if labels.len() != probs.len() {
            return Err(Error::Shape(format!(
                "{} labels vs {} probabilities",
                labels.len(),
                probs.len()
            )));
        }
        if probs.iter().any(|p| !p.is_finite()) {
            return Err(Error::Distribution("non-finite probability".into()));
        }
        Ok(Self { labels, probs })
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, f64)> {
        self.labels.iter().zip(self.probs.iter().copied())
    }
}

impl<L: PartialEq> ProbabilityMap<L> {
    /// Probability of `label`, zero when absent.
    pub fn get(&self, label: &L) -> f64 {
        self.labels
            .iter()
            .position(|l| l == label)
            .map_or(0.0, |i| self.probs[i])
    }
}

impl ProbabilityMap<String> {
    pub fn prob(&self, label: &str) -> f64 {
        self.labels
            .iter()
            .position(|l| l == label)
            .map_or(0.0, |i| self.probs[i])
    }
}

/// Born-rule distribution of a state plus the squared norm that was divided
/// out (1 for normalized input).
#[derive(Debug, Clone, PartialEq)]
pub struct BornDistribution {
    pub distribution: ProbabilityMap,
    pub normalization: f64,
}

/// Squared moduli of the amplitudes, labelled by the state's basis.
/// Conditional states are renormalized first and the constant recorded.
pub fn born_distribution(s: &QuantumState) -> Result<BornDistribution> {
    let (state, normalization) = match s.kind() {
        StateKind::Normalized => (s.clone(), 1.0),
        StateKind::Conditional => s.renormalized()?,
    };
    let probs = state.amplitudes().iter().map(|z| z.norm_sqr()).collect();
    Ok(BornDistribution {
        distribution: ProbabilityMap::new(state.basis().labels(), probs)?,
        normalization,
    })
}
