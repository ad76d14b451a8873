use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::amplitudes::{all_conditional, conditional_amplitudes, slit_amplitudes};
use super::config::EraserConfig;
use super::operators::{build_idler_optics, Detector, EraserExperiment, Slit};
use crate::error::{Error, Result};
use crate::qcore::{Basis, DensityMatrix, Factor, ProbabilityMap, QuantumState};

/// Joint law of (screen bin, idler detector) for one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    pub experiment: EraserExperiment,
    /// Bin centres.
    pub x: Vec<f64>,
    pub detectors: Vec<Detector>,
    /// `P(x_k)`, independent of the idler optics.
    pub screen_marginal: Vec<f64>,
    /// Row-major `[bin][detector]`.
    probs: Vec<f64>,
}

/// One analytic row: bin centre, detector, probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointEntry {
    pub bin: usize,
    pub x_position: f64,
    pub detector: Detector,
    pub probability: f64,
}

/// Outcome label used when sampling a joint distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScreenOutcome {
    pub bin: usize,
    pub detector: Detector,
}

impl JointDistribution {
    pub fn n_bins(&self) -> usize {
        self.x.len()
    }

    /// `P(x_k, D_j)` with `j` indexing [`Self::detectors`].
    pub fn p(&self, bin: usize, detector: usize) -> f64 {
        self.probs[bin * self.detectors.len() + detector]
    }

    pub fn detector_position(&self, d: Detector) -> Option<usize> {
        self.detectors.iter().position(|&x| x == d)
    }

    /// `P(x_k, D)` for every bin.
    pub fn group_curve(&self, d: Detector) -> Option<Vec<f64>> {
        let j = self.detector_position(d)?;
        Some((0..self.n_bins()).map(|k| self.p(k, j)).collect())
    }

    pub fn detector_total(&self, d: Detector) -> Option<f64> {
        self.group_curve(d).map(|c| c.iter().sum())
    }

    /// `Σ_j P(x_k, D_j)` per bin.
    pub fn detector_summed(&self) -> Vec<f64> {
        (0..self.n_bins())
            .map(|k| (0..self.detectors.len()).map(|j| self.p(k, j)).sum())
            .collect()
    }

    /// `P(D | x_k)`; zero on bins the screen never reaches.
    pub fn conditional(&self, bin: usize, d: Detector) -> Option<f64> {
        let j = self.detector_position(d)?;
        let pk = self.screen_marginal[bin];
        Some(if pk > 0.0 { self.p(bin, j) / pk } else { 0.0 })
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn entries(&self) -> Vec<JointEntry> {
        (0..self.n_bins())
            .flat_map(|k| {
                self.detectors
                    .iter()
                    .enumerate()
                    .map(move |(j, &d)| JointEntry {
                        bin: k,
                        x_position: self.x[k],
                        detector: d,
                        probability: self.p(k, j),
                    })
            })
            .collect()
    }

    /// Sampling view, bin-major then detector order.
    pub fn to_probability_map(&self) -> ProbabilityMap<ScreenOutcome> {
        let labels = (0..self.n_bins())
            .flat_map(|bin| {
                self.detectors
                    .iter()
                    .map(move |&detector| ScreenOutcome { bin, detector })
            })
            .collect();
        ProbabilityMap::new(labels, self.probs.clone()).expect("one probability per label")
    }
}

/// `P(x_k, D_j) = P(x_k) · |Σ_path scattering[j, path] · p̃_path,k|²`.
pub fn joint_distribution(
    cfg: &EraserConfig,
    experiment: EraserExperiment,
) -> Result<JointDistribution> {
    let amps = slit_amplitudes(cfg)?;
    let optics = build_idler_optics(experiment);
    let screen_marginal = amps.screen_marginal();
    let cond = all_conditional(&amps);

    let mut probs = Vec::with_capacity(amps.n() * optics.ports.len());
    for (k, c) in cond.iter().enumerate() {
        for j in 0..optics.ports.len() {
            let amp = optics.amplitude(j, Slit::R) * c.r + optics.amplitude(j, Slit::L) * c.l;
            probs.push(screen_marginal[k] * amp.norm_sqr());
        }
    }
    Ok(JointDistribution {
        experiment,
        x: amps.x,
        detectors: optics.ports,
        screen_marginal,
        probs,
    })
}

/// Which detector factors to trace out of the experiment-2 detection state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceOut {
    D1,
    D2,
    Both,
}

pub const NO_CLICK: &str = "no_click";
pub const CLICK: &str = "click";

/// Factors of the post-absorption state: detector `D1`, detector `D2`, and
/// the screen record `x_1..x_N`.
pub fn detection_basis(n: usize) -> Basis {
    Basis::new(vec![
        Factor::new("D1", [NO_CLICK, CLICK]),
        Factor::new("D2", [NO_CLICK, CLICK]),
        Factor::indexed("screen", "x", n),
    ])
}

/// Experiment-2 state after the idler is absorbed, given arrival at bin `k`:
///
/// `½((p̃_R + p̃_L)|click, no click⟩ + (p̃_R − p̃_L)|no click, click⟩)|x_k⟩`.
///
/// It carries the `1/√2` post-selection factor of the slit superposition, so
/// its squared norm is ½ and it is tagged conditional.
pub fn detection_state(cfg: &EraserConfig, k: usize) -> Result<QuantumState> {
    let amps = slit_amplitudes(cfg)?;
    let c = conditional_amplitudes(&amps, k)?;
    let basis = detection_basis(cfg.n);
    let mut v = vec![Complex64::new(0.0, 0.0); basis.dim()];
    v[basis.flat_index(&[1, 0, k])] = 0.5 * (c.r + c.l);
    v[basis.flat_index(&[0, 1, k])] = 0.5 * (c.r - c.l);
    QuantumState::conditional(basis, v)
}

/// A reduced state with unit trace, plus the trace it had before
/// renormalization.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    pub density: DensityMatrix,
    pub normalization: f64,
}

impl ReducedState {
    /// The un-renormalized reduced matrix.
    pub fn unnormalized(&self) -> DensityMatrix {
        self.density.scaled(self.normalization)
    }
}

/// Traces the requested detector(s) out of `|2,t=5⟩⟨2,t=5|` for bin `k`.
pub fn reduced_detection_state(
    cfg: &EraserConfig,
    k: usize,
    trace_out: TraceOut,
) -> Result<ReducedState> {
    if k >= cfg.n {
        return Err(Error::Index(format!("bin {k} out of range 0..{}", cfg.n)));
    }
    let rho = DensityMatrix::from_pure(&detection_state(cfg, k)?);
    let reduced = match trace_out {
        TraceOut::D1 => rho.partial_trace_named("D1")?,
        TraceOut::D2 => rho.partial_trace_named("D2")?,
        TraceOut::Both => rho.partial_trace_named("D1")?.partial_trace_named("D2")?,
    };
    let normalization = reduced.trace();
    if normalization <= 0.0 {
        return Err(Error::DegenerateState(format!("bin {k} has zero weight")));
    }
    Ok(ReducedState {
        density: reduced.scaled(1.0 / normalization),
        normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eraser::config::Envelope;

    #[test]
    fn distributions_are_normalized_and_no_signaling() {
        for env in Envelope::ALL {
            let cfg = EraserConfig::with_n(64).with_envelope(env);
            let reference = joint_distribution(&cfg, EraserExperiment::WhichPath).unwrap();
            for e in EraserExperiment::ALL {
                let d = joint_distribution(&cfg, e).unwrap();
                assert!((d.total() - 1.0).abs() < 1e-10);
                for (k, summed) in d.detector_summed().into_iter().enumerate() {
                    assert!((summed - d.screen_marginal[k]).abs() < 1e-12);
                    assert!((d.screen_marginal[k] - reference.screen_marginal[k]).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn erasing_fringes_are_complementary_cos_squared() {
        let cfg = EraserConfig::default();
        let d = joint_distribution(&cfg, EraserExperiment::Erasing).unwrap();
        for (k, phi) in cfg.relative_phases().into_iter().enumerate() {
            let p1 = d.conditional(k, Detector::D1).unwrap();
            let p2 = d.conditional(k, Detector::D2).unwrap();
            assert!((p1 - (phi / 2.0).cos().powi(2)).abs() < 1e-10);
            assert!((p2 - (phi / 2.0).sin().powi(2)).abs() < 1e-10);
        }
    }

    #[test]
    fn in_phase_bin_is_dark_for_d2() {
        let cfg = EraserConfig::with_n(255);
        let d = joint_distribution(&cfg, EraserExperiment::Erasing).unwrap();
        assert!(d.conditional(127, Detector::D2).unwrap() < 1e-20);
    }

    #[test]
    fn uniform_envelope_splits_detectors_evenly() {
        // 256 midpoints over ten full fringes: Σ_k cos φ_k vanishes.
        let cfg = EraserConfig::default().with_envelope(Envelope::Uniform);
        let d = joint_distribution(&cfg, EraserExperiment::Erasing).unwrap();
        assert!((d.detector_total(Detector::D1).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn combined_detectors_quarter_each() {
        let d = joint_distribution(&EraserConfig::default(), EraserExperiment::Combined).unwrap();
        for det in [Detector::D1, Detector::D2, Detector::D3, Detector::D4] {
            assert!((d.detector_total(det).unwrap() - 0.25).abs() < 0.02);
        }
    }

    #[test]
    fn which_path_detectors_see_envelope_only() {
        let cfg = EraserConfig::default();
        let amps = slit_amplitudes(&cfg).unwrap();
        let d = joint_distribution(&cfg, EraserExperiment::WhichPath).unwrap();
        for k in 0..cfg.n {
            assert!((d.p(k, 0) - amps.p_r[k].norm_sqr() / 2.0).abs() < 1e-15);
            assert!((d.p(k, 1) - amps.p_l[k].norm_sqr() / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn reduced_states() {
        let cfg = EraserConfig::with_n(16);
        let amps = slit_amplitudes(&cfg).unwrap();
        let k = 5;
        let c = conditional_amplitudes(&amps, k).unwrap();
        let plus = 0.25 * (c.r.norm_sqr() + 2.0 * c.cross_term() + c.l.norm_sqr());
        let minus = 0.25 * (c.r.norm_sqr() - 2.0 * c.cross_term() + c.l.norm_sqr());

        let both = reduced_detection_state(&cfg, k, TraceOut::Both).unwrap();
        assert_eq!(both.density.basis().factors().len(), 1);
        for i in 0..cfg.n {
            for j in 0..cfg.n {
                let want = if i == k && j == k { 1.0 } else { 0.0 };
                assert!((both.density.get(i, j) - want).norm() < 1e-15);
            }
        }
        assert!((both.normalization - 0.5).abs() < 1e-12);

        // D2 traced out: D1 click branch carries the "+" weight.
        let r = reduced_detection_state(&cfg, k, TraceOut::D2)
            .unwrap()
            .unnormalized();
        let b = r.basis().clone();
        let at = |d1: usize| r.get(b.flat_index(&[d1, k]), b.flat_index(&[d1, k])).re;
        assert!((at(1) - plus).abs() < 1e-12);
        assert!((at(0) - minus).abs() < 1e-12);

        // D1 traced out: D2 no-click carries "+", click carries "−".
        let r = reduced_detection_state(&cfg, k, TraceOut::D1)
            .unwrap()
            .unnormalized();
        let at = |d2: usize| r.get(b.flat_index(&[d2, k]), b.flat_index(&[d2, k])).re;
        assert!((at(0) - plus).abs() < 1e-12);
        assert!((at(1) - minus).abs() < 1e-12);
    }

    #[test]
    fn equal_real_amplitudes_put_all_weight_on_click() {
        // Odd N: bin 127 sits at θ = 0 with p̃_R = p̃_L = 1/√2.
        let cfg = EraserConfig::with_n(255);
        let r = reduced_detection_state(&cfg, 127, TraceOut::D2).unwrap();
        let b = r.density.basis().clone();
        let click = r
            .density
            .get(b.flat_index(&[1, 127]), b.flat_index(&[1, 127]))
            .re;
        let no_click = r
            .density
            .get(b.flat_index(&[0, 127]), b.flat_index(&[0, 127]))
            .re;
        assert!((click - 1.0).abs() < 1e-12);
        assert!(no_click.abs() < 1e-12);
    }

    #[test]
    fn bad_bin() {
        let cfg = EraserConfig::with_n(4);
        assert!(matches!(
            reduced_detection_state(&cfg, 4, TraceOut::Both),
            Err(Error::Index(_))
        ));
    }
}
