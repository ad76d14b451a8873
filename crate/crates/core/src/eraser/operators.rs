//! Crystal, screen and idler optics as linear maps, and the two orderings of
//! the eraser experiment.
//!
//! Index layout:
//! * slit space `C²⊗C^N`: `slit·N + n` with `R = 0`, `L = 1`;
//! * signal⊗idler space `(C²⊗C^N)⊗(C²⊗C^N)`: `signal·2N + idler`, each half
//!   laid out as in the slit space.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::amplitudes::{all_conditional, slit_amplitudes, SlitAmplitudes};
use super::config::EraserConfig;
use crate::error::{Error, Result};
use crate::qcore::{real_matrix, ComplexMatrix, SparseMatrix};

/// Which-path label of a photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slit {
    R = 0,
    L = 1,
}

impl Slit {
    pub const BOTH: [Slit; 2] = [Slit::R, Slit::L];
}

/// Flat index of `|slit⟩|n⟩` in the slit space.
pub fn slit_index(n_angles: usize, slit: Slit, n: usize) -> usize {
    slit as usize * n_angles + n
}

/// Flat index of `|signal⟩ ⊗ |idler⟩` in the signal⊗idler space.
pub fn pair_index(n_angles: usize, signal: (Slit, usize), idler: (Slit, usize)) -> usize {
    slit_index(n_angles, signal.0, signal.1) * 2 * n_angles + slit_index(n_angles, idler.0, idler.1)
}

/// Idler detector ports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Detector {
    D1,
    D2,
    D3,
    D4,
}

impl Detector {
    pub fn name(self) -> &'static str {
        match self {
            Detector::D1 => "D1",
            Detector::D2 => "D2",
            Detector::D3 => "D3",
            Detector::D4 => "D4",
        }
    }

    pub fn parse(s: &str) -> Option<Detector> {
        match s {
            "D1" => Some(Detector::D1),
            "D2" => Some(Detector::D2),
            "D3" => Some(Detector::D3),
            "D4" => Some(Detector::D4),
            _ => None,
        }
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The three idler arrangements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EraserExperiment {
    /// Each idler path runs straight into its own detector.
    WhichPath = 1,
    /// A beamsplitter mixes both idler paths before two detectors.
    Erasing = 2,
    /// Beamsplitters send half of each path to an erasing pair `D1/D2` and
    /// half to which-path detectors `D3/D4`.
    Combined = 3,
}

impl EraserExperiment {
    pub const ALL: [EraserExperiment; 3] = [
        EraserExperiment::WhichPath,
        EraserExperiment::Erasing,
        EraserExperiment::Combined,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn detectors(self) -> &'static [Detector] {
        match self {
            EraserExperiment::WhichPath | EraserExperiment::Erasing => {
                &[Detector::D1, Detector::D2]
            }
            EraserExperiment::Combined => &[Detector::D1, Detector::D2, Detector::D3, Detector::D4],
        }
    }
}

impl TryFrom<u8> for EraserExperiment {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        match id {
            1 => Ok(EraserExperiment::WhichPath),
            2 => Ok(EraserExperiment::Erasing),
            3 => Ok(EraserExperiment::Combined),
            other => Err(Error::Argument(format!(
                "unknown eraser experiment {other}; expected 1, 2 or 3"
            ))),
        }
    }
}

/// Scattering of the idler's slit label `{R, L}` into detector ports.
#[derive(Debug, Clone, PartialEq)]
pub struct IdlerOptics {
    pub experiment: EraserExperiment,
    pub ports: Vec<Detector>,
    /// `ports.len() × 2`; column 0 is `R`, column 1 is `L`.
    pub scattering: ComplexMatrix,
}

impl IdlerOptics {
    pub fn amplitude(&self, port: usize, slit: Slit) -> Complex64 {
        self.scattering.get(port, slit as usize)
    }
}

pub fn build_idler_optics(experiment: EraserExperiment) -> IdlerOptics {
    let s = FRAC_1_SQRT_2;
    let scattering = match experiment {
        EraserExperiment::WhichPath => real_matrix(&[&[1.0, 0.0], &[0.0, 1.0]]),
        EraserExperiment::Erasing => real_matrix(&[&[s, s], &[s, -s]]),
        EraserExperiment::Combined => {
            real_matrix(&[&[0.5, 0.5], &[0.5, -0.5], &[s, 0.0], &[0.0, s]])
        }
    };
    IdlerOptics {
        experiment,
        ports: experiment.detectors().to_vec(),
        scattering,
    }
}

/// The nonlinear crystal `C`: `|slit⟩|n⟩ ↦ |slit_s⟩|n⟩ ⊗ |slit_i⟩|n⟩`, a
/// `(2N)² × 2N` isometry.
pub fn build_crystal(cfg: &EraserConfig) -> Result<SparseMatrix> {
    cfg.validate()?;
    let n = cfg.n;
    let one = Complex64::new(1.0, 0.0);
    let triplets = Slit::BOTH
        .iter()
        .flat_map(|&slit| {
            (0..n).map(move |k| {
                (
                    pair_index(n, (slit, k), (slit, k)),
                    slit_index(n, slit, k),
                    one,
                )
            })
        })
        .collect();
    SparseMatrix::from_triplets(4 * n * n, 2 * n, triplets)
}

/// The screen `S`, a `2N × (2N)²` map. A matched pair
/// `|slit_s⟩|n⟩ ⊗ |slit_i⟩|n⟩` goes to `(1/√N) Σ_m p̃_{slit,m} |slit_i⟩|m⟩`,
/// the same vector for every `n`; unmatched pairs go to zero. Dark bins
/// contribute `p̃ = 0`.
pub fn build_screen(cfg: &EraserConfig, amps: &SlitAmplitudes) -> Result<SparseMatrix> {
    cfg.validate()?;
    let n = cfg.n;
    if amps.n() != n {
        return Err(Error::Shape(format!(
            "amplitudes cover {} bins, config has {n}",
            amps.n()
        )));
    }
    let cond = all_conditional(amps);
    let scale = 1.0 / (n as f64).sqrt();
    let mut triplets = Vec::with_capacity(2 * n * n);
    for slit in Slit::BOTH {
        for k in 0..n {
            let col = pair_index(n, (slit, k), (slit, k));
            for (m, c) in cond.iter().enumerate() {
                let p = match slit {
                    Slit::R => c.r,
                    Slit::L => c.l,
                };
                triplets.push((slit_index(n, slit, m), col, p * scale));
            }
        }
    }
    SparseMatrix::from_triplets(2 * n, 4 * n * n, triplets)
}

/// `gate ⊗ I_N` on the slit space (beamsplitter, mirrors, `Y`).
pub fn lift_to_slit_space(gate: &ComplexMatrix, n: usize) -> Result<SparseMatrix> {
    SparseMatrix::from_dense(gate).kron(&SparseMatrix::identity(n))
}

/// `(I⊗I) ⊗ (gate⊗I)`: the gate acts on the idler's slit label only.
pub fn lift_to_idler(gate: &ComplexMatrix, n: usize) -> Result<SparseMatrix> {
    SparseMatrix::identity(2 * n).kron(&lift_to_slit_space(gate, n)?)
}

pub fn hadamard() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    real_matrix(&[&[s, s], &[s, -s]])
}

pub fn mirror() -> ComplexMatrix {
    real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]])
}

/// `diag(1, −1)`; the same matrix quantum computing calls `Z`.
pub fn phase_flip() -> ComplexMatrix {
    real_matrix(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Everything needed to compose the eraser for one configuration.
#[derive(Debug, Clone)]
pub struct EraserOperators {
    pub n: usize,
    pub amplitudes: SlitAmplitudes,
    pub crystal: SparseMatrix,
    pub screen: SparseMatrix,
}

impl EraserOperators {
    pub fn new(cfg: &EraserConfig) -> Result<Self> {
        let amplitudes = slit_amplitudes(cfg)?;
        Ok(Self {
            n: cfg.n,
            crystal: build_crystal(cfg)?,
            screen: build_screen(cfg, &amplitudes)?,
            amplitudes,
        })
    }

    /// `(H⊗I) ∘ (X⊗I) ∘ (H⊗I) ∘ S ∘ C`: the idler optics act after the
    /// screen has registered the signal photon.
    pub fn compose_delayed(&self) -> Result<ComplexMatrix> {
        let h = lift_to_slit_space(&hadamard(), self.n)?;
        let x = lift_to_slit_space(&mirror(), self.n)?;
        let screened = self.screen.matmul(&self.crystal)?;
        Ok(h.matmul(&x)?.matmul(&h)?.matmul(&screened)?.to_dense())
    }

    /// `S ∘ ((I⊗I)⊗(H⊗I)) ∘ ((I⊗I)⊗(X⊗I)) ∘ ((I⊗I)⊗(H⊗I)) ∘ C`: the idler
    /// passes its optics before the signal reaches the screen.
    pub fn compose_nondelayed(&self) -> Result<ComplexMatrix> {
        let h = lift_to_idler(&hadamard(), self.n)?;
        let x = lift_to_idler(&mirror(), self.n)?;
        let idler_side = h.matmul(&self.crystal)?;
        let idler_side = x.matmul(&idler_side)?;
        let idler_side = h.matmul(&idler_side)?;
        Ok(self.screen.matmul(&idler_side)?.to_dense())
    }

    /// `(Y⊗I) ∘ S ∘ C`, the closed form both orderings reduce to.
    pub fn closed_form(&self) -> Result<ComplexMatrix> {
        let y = lift_to_slit_space(&phase_flip(), self.n)?;
        Ok(y.matmul(&self.screen)?.matmul(&self.crystal)?.to_dense())
    }

    /// Largest entry of `S∘((I⊗I)⊗(Y⊗I)) − (Y⊗I)∘S`.
    pub fn screen_intertwining_defect(&self) -> Result<f64> {
        let y_idler = lift_to_idler(&phase_flip(), self.n)?;
        let y_slit = lift_to_slit_space(&phase_flip(), self.n)?;
        let left = self.screen.matmul(&y_idler)?;
        let right = y_slit.matmul(&self.screen)?;
        left.max_abs_diff(&right)
    }
}

pub fn compose_delayed_eraser(cfg: &EraserConfig) -> Result<ComplexMatrix> {
    EraserOperators::new(cfg)?.compose_delayed()
}

pub fn compose_nondelayed_eraser(cfg: &EraserConfig) -> Result<ComplexMatrix> {
    EraserOperators::new(cfg)?.compose_nondelayed()
}

/// Both orderings and their largest entrywise difference.
#[derive(Debug, Clone)]
pub struct EraserIdentityReport {
    pub n: usize,
    pub delayed: ComplexMatrix,
    pub nondelayed: ComplexMatrix,
    pub max_abs_diff: f64,
    /// Distance of the delayed ordering from `(Y⊗I)∘S∘C`.
    pub closed_form_diff: f64,
}

pub fn verify_eraser_identity(cfg: &EraserConfig) -> Result<EraserIdentityReport> {
    let ops = EraserOperators::new(cfg)?;
    let delayed = ops.compose_delayed()?;
    let nondelayed = ops.compose_nondelayed()?;
    let closed = ops.closed_form()?;
    Ok(EraserIdentityReport {
        n: cfg.n,
        max_abs_diff: delayed.max_abs_diff(&nondelayed)?,
        closed_form_diff: delayed.max_abs_diff(&closed)?,
        delayed,
        nondelayed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eraser::amplitudes::conditional_amplitudes;
    use crate::eraser::config::Envelope;
    use crate::qcore::{tensor_product, IDENTITY_TOL};

    fn basis_vec(dim: usize, idx: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[idx] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn crystal_is_an_isometry_onto_matched_pairs() {
        let cfg = EraserConfig::with_n(8);
        let c = build_crystal(&cfg).unwrap();
        assert_eq!((c.rows(), c.cols()), (256, 16));
        assert!(c.is_isometry(IDENTITY_TOL));
        let out = c
            .apply_vec(&basis_vec(16, slit_index(8, Slit::R, 0)))
            .unwrap();
        assert_eq!(
            out,
            basis_vec(256, pair_index(8, (Slit::R, 0), (Slit::R, 0)))
        );
    }

    #[test]
    fn screen_action_on_matched_and_unmatched_pairs() {
        let cfg = EraserConfig::with_n(8);
        let ops = EraserOperators::new(&cfg).unwrap();
        let n = 8;
        let scale = 1.0 / (n as f64).sqrt();
        let matched = basis_vec(4 * n * n, pair_index(n, (Slit::R, 0), (Slit::R, 0)));
        let got = ops.screen.apply_vec(&matched).unwrap();
        for m in 0..n {
            let want = conditional_amplitudes(&ops.amplitudes, m).unwrap().r * scale;
            assert!((got[slit_index(n, Slit::R, m)] - want).norm() < 1e-15);
            assert_eq!(got[slit_index(n, Slit::L, m)], Complex64::new(0.0, 0.0));
        }
        let unmatched = basis_vec(4 * n * n, pair_index(n, (Slit::R, 0), (Slit::L, 0)));
        assert!(ops
            .screen
            .apply_vec(&unmatched)
            .unwrap()
            .iter()
            .all(|z| z.norm() == 0.0));

        let sc = ops.screen.matmul(&ops.crystal).unwrap();
        let col = sc
            .apply_vec(&basis_vec(2 * n, slit_index(n, Slit::R, 0)))
            .unwrap();
        let norm: f64 = col.iter().map(|z| z.norm_sqr()).sum();
        let want: f64 = (0..n)
            .map(|m| {
                conditional_amplitudes(&ops.amplitudes, m)
                    .unwrap()
                    .r
                    .norm_sqr()
            })
            .sum::<f64>()
            / n as f64;
        assert!((norm - want).abs() < 1e-14);
    }

    #[test]
    fn screen_is_neither_unitary_nor_isometric() {
        let ops = EraserOperators::new(&EraserConfig::with_n(8)).unwrap();
        assert!(matches!(ops.screen.is_unitary(1e-12), Err(Error::Shape(_))));
        assert!(!ops.screen.is_isometry(1e-12));
    }

    #[test]
    fn idler_optics_are_isometries() {
        for e in EraserExperiment::ALL {
            let o = build_idler_optics(e);
            assert!(o.scattering.is_isometry(IDENTITY_TOL), "{e:?}");
            assert_eq!(o.ports.len(), o.scattering.rows());
        }
        let which = build_idler_optics(EraserExperiment::WhichPath);
        assert_eq!(which.scattering, ComplexMatrix::identity(2));
        let erasing = build_idler_optics(EraserExperiment::Erasing);
        assert!(erasing.scattering.approx_eq(&hadamard(), 0.0));
        assert!(matches!(
            EraserExperiment::try_from(0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn combined_optics_column_algebra() {
        let o = build_idler_optics(EraserExperiment::Combined);
        let r = o.scattering.column(0);
        let l = o.scattering.column(1);
        let nr: f64 = r.iter().map(|z| z.norm_sqr()).sum();
        let nl: f64 = l.iter().map(|z| z.norm_sqr()).sum();
        let ip: Complex64 = r.iter().zip(&l).map(|(a, b)| a.conj() * b).sum();
        // 1/4 + 1/4 + 1/2 and 1/4 − 1/4.
        assert!((nr - 1.0).abs() < 1e-15 && (nl - 1.0).abs() < 1e-15);
        assert!(ip.norm() < 1e-15);
    }

    #[test]
    fn optics_reduce_to_phase_flip() {
        let hxh = hadamard()
            .matmul(&mirror())
            .unwrap()
            .matmul(&hadamard())
            .unwrap();
        assert!(hxh.approx_eq(&phase_flip(), IDENTITY_TOL));
        let n = 4;
        let h = lift_to_idler(&hadamard(), n).unwrap();
        let x = lift_to_idler(&mirror(), n).unwrap();
        let lifted = h.matmul(&x).unwrap().matmul(&h).unwrap();
        let y = lift_to_idler(&phase_flip(), n).unwrap();
        assert!(lifted.max_abs_diff(&y).unwrap() <= IDENTITY_TOL);
    }

    #[test]
    fn sparse_lifts_match_dense_kronecker_products() {
        let n = 3;
        let i2 = ComplexMatrix::identity(2);
        let in_ = ComplexMatrix::identity(n);
        let dense = tensor_product(
            &tensor_product(&i2, &in_).unwrap(),
            &tensor_product(&hadamard(), &in_).unwrap(),
        )
        .unwrap();
        let sparse = lift_to_idler(&hadamard(), n).unwrap().to_dense();
        assert!(dense.approx_eq(&sparse, 0.0));
    }

    #[test]
    fn delayed_composite_acts_as_signed_screen() {
        let n = 8;
        let cfg = EraserConfig::with_n(n);
        let ops = EraserOperators::new(&cfg).unwrap();
        let a = ops.compose_delayed().unwrap();
        assert_eq!((a.rows(), a.cols()), (2 * n, 2 * n));
        let scale = 1.0 / (n as f64).sqrt();
        for (slit, sign) in [(Slit::R, 1.0), (Slit::L, -1.0)] {
            let col = a.column(slit_index(n, slit, 0));
            for m in 0..n {
                let c = conditional_amplitudes(&ops.amplitudes, m).unwrap();
                let p = if slit == Slit::R { c.r } else { c.l };
                assert!((col[slit_index(n, slit, m)] - p * (sign * scale)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn orderings_agree_for_small_n() {
        for env in Envelope::ALL {
            for n in [2, 8] {
                let report =
                    verify_eraser_identity(&EraserConfig::with_n(n).with_envelope(env)).unwrap();
                assert!(report.max_abs_diff <= IDENTITY_TOL);
                assert!(report.closed_form_diff <= IDENTITY_TOL);
            }
        }
    }

    #[test]
    fn intertwining() {
        for n in [2, 8] {
            let ops = EraserOperators::new(&EraserConfig::with_n(n)).unwrap();
            assert!(ops.screen_intertwining_defect().unwrap() <= IDENTITY_TOL);
        }
    }
}
