use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Single-slit intensity profile as a function of `sin θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Envelope {
    /// Fraunhofer single-slit pattern `sinc²(π a sin θ / λ)`.
    FraunhoferSinc2,
    /// `exp(−sin²θ / 2σ²)` with `σ = λ / 2a`.
    Gaussian,
    Uniform,
}

impl Envelope {
    pub const ALL: [Envelope; 3] = [
        Envelope::FraunhoferSinc2,
        Envelope::Gaussian,
        Envelope::Uniform,
    ];

    pub fn intensity(self, sin_theta: f64, slit_width: f64, wavelength: f64) -> f64 {
        match self {
            Envelope::FraunhoferSinc2 => {
                let u = std::f64::consts::PI * slit_width * sin_theta / wavelength;
                if u == 0.0 {
                    1.0
                } else {
                    (u.sin() / u).powi(2)
                }
            }
            Envelope::Gaussian => {
                let sigma = wavelength / (2.0 * slit_width);
                (-sin_theta * sin_theta / (2.0 * sigma * sigma)).exp()
            }
            Envelope::Uniform => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Envelope::FraunhoferSinc2 => "fraunhofer_sinc2",
            Envelope::Gaussian => "gaussian",
            Envelope::Uniform => "uniform",
        }
    }
}

impl fmt::Display for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Discretization and geometry of the double-slit source.
///
/// Lengths share one arbitrary unit. Angles `θ_1..θ_N` are the midpoints of
/// `N` equal cells in `sin θ` over `[−aperture, aperture]`; bin `k` lands on
/// the screen at `x_k = screen_distance · tan θ_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EraserConfig {
    /// Number of discrete angles.
    pub n: usize,
    pub wavelength: f64,
    pub slit_separation: f64,
    pub slit_width: f64,
    pub screen_distance: f64,
    pub envelope: Envelope,
    /// Largest `|sin θ|` reached by the angle grid.
    pub aperture: f64,
    /// Screen offset of each slit's diffraction hump: the right slit's
    /// envelope is centred at `+hump_shift`, the left one's at `−hump_shift`.
    /// Zero keeps `|p_R| = |p_L|` bin by bin.
    pub hump_shift: f64,
}

impl Default for EraserConfig {
    fn default() -> Self {
        let wavelength = 500.0;
        Self {
            n: 256,
            wavelength,
            slit_separation: 20.0 * wavelength,
            slit_width: 4.0 * wavelength,
            screen_distance: 1.0e6,
            envelope: Envelope::FraunhoferSinc2,
            aperture: 0.25,
            hump_shift: 0.0,
        }
    }
}

impl EraserConfig {
    pub fn with_n(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn with_envelope(mut self, envelope: Envelope) -> Self {
        self.envelope = envelope;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig {
                field: "n",
                reason: format!("need at least 2 angles, got {}", self.n),
            });
        }
        for (field, value) in [
            ("wavelength", self.wavelength),
            ("slit_separation", self.slit_separation),
            ("slit_width", self.slit_width),
            ("screen_distance", self.screen_distance),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig {
                    field,
                    reason: format!("must be a positive length, got {value}"),
                });
            }
        }
        if self.slit_separation <= self.slit_width {
            return Err(Error::InvalidConfig {
                field: "slit_separation",
                reason: format!(
                    "must exceed slit_width ({} <= {})",
                    self.slit_separation, self.slit_width
                ),
            });
        }
        if !(self.aperture > 0.0 && self.aperture < 1.0) {
            return Err(Error::InvalidConfig {
                field: "aperture",
                reason: format!("must lie in (0, 1), got {}", self.aperture),
            });
        }
        if !(self.hump_shift.is_finite() && self.hump_shift >= 0.0) {
            return Err(Error::InvalidConfig {
                field: "hump_shift",
                reason: format!(
                    "must be a finite non-negative length, got {}",
                    self.hump_shift
                ),
            });
        }
        Ok(())
    }

    /// `sin θ_k` for each bin.
    pub fn sin_thetas(&self) -> Vec<f64> {
        let cell = 2.0 * self.aperture / self.n as f64;
        (0..self.n)
            .map(|k| -self.aperture + (k as f64 + 0.5) * cell)
            .collect()
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.sin_thetas().into_iter().map(f64::asin).collect()
    }

    /// Bin centres `x_k = screen_distance · tan θ_k`, strictly increasing.
    pub fn bin_centers(&self) -> Vec<f64> {
        self.thetas()
            .into_iter()
            .map(|t| self.screen_distance * t.tan())
            .collect()
    }

    /// Screen span: from half a bin spacing below `x_1` to half a spacing
    /// above `x_N`.
    pub fn screen_span(&self) -> (f64, f64) {
        let x = self.bin_centers();
        let n = x.len();
        (
            x[0] - (x[1] - x[0]) / 2.0,
            x[n - 1] + (x[n - 1] - x[n - 2]) / 2.0,
        )
    }

    /// Relative phase `2π d sin θ_k / λ` between the right and left paths.
    pub fn relative_phases(&self) -> Vec<f64> {
        self.sin_thetas()
            .into_iter()
            .map(|s| 2.0 * std::f64::consts::PI * self.slit_separation * s / self.wavelength)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid_and_symmetric() {
        let cfg = EraserConfig::default();
        cfg.validate().unwrap();
        let s = cfg.sin_thetas();
        assert_eq!(s.len(), 256);
        for k in 0..s.len() {
            assert!((s[k] + s[s.len() - 1 - k]).abs() < 1e-15);
        }
        let x = cfg.bin_centers();
        assert!(x.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn validation_names_field() {
        let bad = EraserConfig::with_n(0);
        assert!(matches!(
            bad.validate(),
            Err(Error::InvalidConfig { field: "n", .. })
        ));
        let bad = EraserConfig {
            slit_width: 30.0 * 500.0,
            ..EraserConfig::default()
        };
        assert!(matches!(
            bad.validate(),
            Err(Error::InvalidConfig {
                field: "slit_separation",
                ..
            })
        ));
        let bad = EraserConfig {
            wavelength: -1.0,
            ..EraserConfig::default()
        };
        assert!(matches!(
            bad.validate(),
            Err(Error::InvalidConfig {
                field: "wavelength",
                ..
            })
        ));
        let bad = EraserConfig {
            aperture: 1.0,
            ..EraserConfig::default()
        };
        assert!(matches!(
            bad.validate(),
            Err(Error::InvalidConfig {
                field: "aperture",
                ..
            })
        ));
    }

    #[test]
    fn sinc_envelope_first_zero() {
        let e = Envelope::FraunhoferSinc2;
        assert_eq!(e.intensity(0.0, 4.0, 1.0), 1.0);
        assert!(e.intensity(0.25, 4.0, 1.0) < 1e-30);
    }
}
