use std::f64::consts::PI;

use num_complex::Complex64;

use super::config::EraserConfig;
use crate::error::{Error, Result};

/// Per-slit amplitudes over the angle grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SlitAmplitudes {
    /// Right slit, `Σ|p_R|² = 1`.
    pub p_r: Vec<Complex64>,
    /// Left slit, `Σ|p_L|² = 1`.
    pub p_l: Vec<Complex64>,
    /// Bin centres on the screen, strictly increasing.
    pub x: Vec<f64>,
}

impl SlitAmplitudes {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Screen marginal `P(x_k) = (|p_R,k|² + |p_L,k|²) / 2`.
    pub fn screen_marginal(&self) -> Vec<f64> {
        self.p_r
            .iter()
            .zip(&self.p_l)
            .map(|(r, l)| (r.norm_sqr() + l.norm_sqr()) / 2.0)
            .collect()
    }
}

/// Slit amplitudes renormalized at one arrival bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalAmplitudes {
    pub k: usize,
    pub r: Complex64,
    pub l: Complex64,
}

impl ConditionalAmplitudes {
    /// `Re(p̃_R · conj(p̃_L))`, the interference term.
    pub fn cross_term(&self) -> f64 {
        (self.r * self.l.conj()).re
    }
}

/// Envelope magnitudes with opposite path phases `±π d sin θ / λ`.
pub fn slit_amplitudes(cfg: &EraserConfig) -> Result<SlitAmplitudes> {
    cfg.validate()?;
    let x = cfg.bin_centers();
    let sin_t = cfg.sin_thetas();

    let hump = |center: f64| -> Vec<f64> {
        x.iter()
            .map(|&xk| {
                let s = ((xk - center) / cfg.screen_distance).atan().sin();
                cfg.envelope.intensity(s, cfg.slit_width, cfg.wavelength)
            })
            .collect()
    };
    let env_r = hump(cfg.hump_shift);
    let env_l = hump(-cfg.hump_shift);

    let build = |env: &[f64], sign: f64| -> Result<Vec<Complex64>> {
        let total: f64 = env.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::DegenerateConfig(format!(
                "{} envelope vanishes on the whole aperture",
                cfg.envelope
            )));
        }
        Ok(env
            .iter()
            .zip(&sin_t)
            .map(|(&e, &s)| {
                let phase = sign * PI * cfg.slit_separation * s / cfg.wavelength;
                Complex64::from_polar((e / total).sqrt(), phase)
            })
            .collect())
    };

    Ok(SlitAmplitudes {
        p_r: build(&env_r, 1.0)?,
        p_l: build(&env_l, -1.0)?,
        x,
    })
}

/// `p̃_{R,k} = p_{R,k} / √(|p_{R,k}|² + |p_{L,k}|²)` and likewise for `L`.
/// `k` is zero-based.
pub fn conditional_amplitudes(s: &SlitAmplitudes, k: usize) -> Result<ConditionalAmplitudes> {
    if k >= s.n() {
        return Err(Error::Index(format!("bin {k} out of range 0..{}", s.n())));
    }
    let (r, l) = (s.p_r[k], s.p_l[k]);
    let norm = (r.norm_sqr() + l.norm_sqr()).sqrt();
    if norm == 0.0 {
        return Err(Error::DarkBin(k));
    }
    Ok(ConditionalAmplitudes {
        k,
        r: r / norm,
        l: l / norm,
    })
}

/// Conditional amplitudes for every bin, with dark bins mapped to zero.
pub(crate) fn all_conditional(s: &SlitAmplitudes) -> Vec<ConditionalAmplitudes> {
    (0..s.n())
        .map(|k| {
            conditional_amplitudes(s, k).unwrap_or(ConditionalAmplitudes {
                k,
                r: Complex64::new(0.0, 0.0),
                l: Complex64::new(0.0, 0.0),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eraser::config::Envelope;

    fn norm_sqr(v: &[Complex64]) -> f64 {
        v.iter().map(|z| z.norm_sqr()).sum()
    }

    #[test]
    fn uniform_envelope_magnitudes() {
        let cfg = EraserConfig::with_n(4).with_envelope(Envelope::Uniform);
        let s = slit_amplitudes(&cfg).unwrap();
        for z in s.p_r.iter().chain(&s.p_l) {
            assert!((z.norm() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn normalized_for_every_envelope() {
        for env in Envelope::ALL {
            for n in [2, 7, 64, 256] {
                let s = slit_amplitudes(&EraserConfig::with_n(n).with_envelope(env)).unwrap();
                assert!((norm_sqr(&s.p_r) - 1.0).abs() < 1e-10);
                assert!((norm_sqr(&s.p_l) - 1.0).abs() < 1e-10);
                assert!(s.x.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn central_bin_is_in_phase() {
        // Odd N puts a bin at θ = 0.
        let cfg = EraserConfig::with_n(255);
        let s = slit_amplitudes(&cfg).unwrap();
        let k = 127;
        assert!(cfg.sin_thetas()[k].abs() < 1e-15);
        assert!(s.p_r[k].arg().abs() < 1e-12);
        assert!(s.p_l[k].arg().abs() < 1e-12);
        let sum_at = |k: usize| {
            let c = conditional_amplitudes(&s, k).unwrap();
            (c.r + c.l).norm()
        };
        assert!((sum_at(k) - 2f64.sqrt()).abs() < 1e-12);
        assert!((0..cfg.n).all(|j| sum_at(j) <= sum_at(k) + 1e-12));
    }

    #[test]
    fn conditional_cases() {
        let one = Complex64::new(0.3, 0.4);
        let sym = SlitAmplitudes {
            p_r: vec![one],
            p_l: vec![one],
            x: vec![0.0],
        };
        let c = conditional_amplitudes(&sym, 0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((c.r - one / one.norm() * h).norm() < 1e-15);
        assert!((c.r.norm() - h).abs() < 1e-15 && (c.l.norm() - h).abs() < 1e-15);

        let single = SlitAmplitudes {
            p_r: vec![one],
            p_l: vec![Complex64::new(0.0, 0.0)],
            x: vec![0.0],
        };
        let c = conditional_amplitudes(&single, 0).unwrap();
        assert!((c.r - one / one.norm()).norm() < 1e-15);
        assert!((c.r.norm() - 1.0).abs() < 1e-15);

        let dark = SlitAmplitudes {
            p_r: vec![Complex64::new(0.0, 0.0)],
            p_l: vec![Complex64::new(0.0, 0.0)],
            x: vec![0.0],
        };
        assert_eq!(conditional_amplitudes(&dark, 0), Err(Error::DarkBin(0)));
        assert!(matches!(
            conditional_amplitudes(&dark, 1),
            Err(Error::Index(_))
        ));
    }

    #[test]
    fn conditional_amplitudes_are_unit_vectors() {
        let s = slit_amplitudes(&EraserConfig::default()).unwrap();
        for k in 0..s.n() {
            let c = conditional_amplitudes(&s, k).unwrap();
            assert!((c.r.norm_sqr() + c.l.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn hump_shift_displaces_envelopes() {
        let cfg = EraserConfig {
            hump_shift: 20_000.0,
            ..EraserConfig::default()
        };
        let s = slit_amplitudes(&cfg).unwrap();
        let argmax = |v: &[Complex64]| {
            (0..v.len())
                .max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm()))
                .unwrap()
        };
        assert!(s.x[argmax(&s.p_r)] > 0.0);
        assert!(s.x[argmax(&s.p_l)] < 0.0);
    }
}
