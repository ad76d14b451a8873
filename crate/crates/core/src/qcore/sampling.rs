//! Deterministic Born-rule sampling.
//!
//! Every run draws from its own ChaCha20 stream: the key is expanded from the
//! user seed (`ChaCha20Rng::seed_from_u64`) and the 64-bit stream id is the
//! run index. ChaCha20 is a counter-mode generator, so run `i` sees the same
//! uniform variate regardless of how many other runs exist, which thread
//! evaluates it, or in which order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::born::ProbabilityMap;
use crate::error::{Error, Result};

/// Tolerance on `Σp = 1` accepted by the sampler.
pub const SUM_TOL: f64 = 1e-9;
/// Negative probabilities down to this value are treated as rounding noise.
pub const NEGATIVE_TOL: f64 = -1e-12;

/// Generator for run `run_index` under `seed`.
pub fn run_stream(seed: u64, run_index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(run_index);
    rng
}

/// Uniform variate in `[0, 1)` from the top 53 bits of one 64-bit word.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Inverse-CDF sampler over a validated distribution.
#[derive(Debug, Clone)]
pub struct Sampler {
    cdf: Vec<f64>,
    last_positive: usize,
}

impl Sampler {
    pub fn new<L>(dist: &ProbabilityMap<L>) -> Result<Self> {
        if dist.is_empty() {
            return Err(Error::Argument("empty distribution".into()));
        }
        if let Some(p) = dist.probs().iter().find(|&&p| p < NEGATIVE_TOL) {
            return Err(Error::Distribution(format!("negative probability {p}")));
        }
        let total = dist.total();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::Distribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        let mut acc = 0.0;
        let cdf = dist
            .probs()
            .iter()
            .map(|&p| {
                acc += p.max(0.0);
                acc
            })
            .collect();
        let last_positive = dist
            .probs()
            .iter()
            .rposition(|&p| p > 0.0)
            .ok_or_else(|| Error::Distribution("no positive probability".into()))?;
        Ok(Self { cdf, last_positive })
    }

    /// Index of the outcome selected by `u ∈ [0, 1)`: the first label whose
    /// cumulative probability exceeds `u`. Rounding slack at the top end
    /// falls on the last label with positive probability.
    pub fn index_for(&self, u: f64) -> usize {
        let idx = self.cdf.partition_point(|&c| c <= u);
        idx.min(self.last_positive)
    }

    pub fn sample(&self, seed: u64, run_index: u64) -> usize {
        let mut rng = run_stream(seed, run_index);
        self.index_for(uniform(&mut rng))
    }
}

/// Samples one outcome for run `run_index`.
pub fn sample_outcome<L: Clone>(dist: &ProbabilityMap<L>, seed: u64, run_index: u64) -> Result<L> {
    let sampler = Sampler::new(dist)?;
    Ok(dist.labels()[sampler.sample(seed, run_index)].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin() -> ProbabilityMap {
        ProbabilityMap::new(vec!["↑".into(), "↓".into()], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn degenerate_distribution() {
        let d =
            ProbabilityMap::new(vec!["↑".to_string(), "↓".to_string()], vec![0.0, 1.0]).unwrap();
        for run in 0..50 {
            assert_eq!(sample_outcome(&d, 9, run).unwrap(), "↓");
        }
    }

    #[test]
    fn zero_mass_labels_never_drawn() {
        let s = Sampler::new(
            &ProbabilityMap::new(vec![0, 1, 2, 3], vec![0.25, 0.0, 0.75, 0.0]).unwrap(),
        )
        .unwrap();
        assert_eq!(s.index_for(0.0), 0);
        assert_eq!(s.index_for(0.25), 2);
        assert_eq!(s.index_for(0.999_999_999_999), 2);
        assert_eq!(s.index_for(1.0), 2);
    }

    #[test]
    fn reproducible() {
        let a = sample_outcome(&coin(), 42, 0).unwrap();
        let b = sample_outcome(&coin(), 42, 0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn law_of_large_numbers() {
        let s = Sampler::new(&coin()).unwrap();
        let n = 100_000;
        let ups = (0..n).filter(|&i| s.sample(42, i) == 0).count();
        let freq = ups as f64 / n as f64;
        assert!((freq - 0.5).abs() < 0.01, "frequency {freq}");
    }

    #[test]
    fn validation() {
        let neg = ProbabilityMap::new(vec![0, 1], vec![1.1, -0.1]).unwrap();
        assert!(matches!(Sampler::new(&neg), Err(Error::Distribution(_))));
        let tiny_neg = ProbabilityMap::new(vec![0, 1], vec![1.0, -1e-13]).unwrap();
        assert!(Sampler::new(&tiny_neg).is_ok());
        let short = ProbabilityMap::new(vec![0, 1], vec![0.5, 0.4]).unwrap();
        assert!(matches!(Sampler::new(&short), Err(Error::Distribution(_))));
        let empty: ProbabilityMap<u8> = ProbabilityMap::new(vec![], vec![]).unwrap();
        assert!(matches!(Sampler::new(&empty), Err(Error::Argument(_))));
    }
}
