//! Forward-time simulation of two delayed choice experiments: Wheeler's
//! Mach–Zehnder set-up and the delayed quantum eraser.
//!
//! Both are modelled as compositions of linear maps on finite-dimensional
//! state spaces. For each, the ordering in which the "choice" is made after
//! the photon has passed the earlier optics and the ordering in which it is
//! made beforehand give the same operator; [`wheeler::compose_delayed`] /
//! [`wheeler::compose_nondelayed`] and
//! [`eraser::compose_delayed_eraser`] / [`eraser::compose_nondelayed_eraser`]
//! compute both sides. Detector statistics come from Born distributions and
//! from seeded Monte Carlo runs in [`runs`].

pub mod eraser;
pub mod error;
pub mod qcore;
pub mod runs;
pub mod wheeler;

pub use eraser::{Detector, Envelope, EraserConfig, EraserExperiment};
pub use error::{Error, Result};
pub use qcore::{ComplexMatrix, DensityMatrix, ProbabilityMap, QuantumState};
pub use runs::{EventRecord, Experiment, Histogram};
pub use wheeler::Scenario;
