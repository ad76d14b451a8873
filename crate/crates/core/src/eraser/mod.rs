//! Discretized delayed quantum eraser.
//!
//! A photon leaves the double slit through `R` or `L` at one of `N` angles,
//! is split into a signal/idler pair by the crystal, and the signal lands in
//! screen bin `x_k`. The idler is sent through one of three optical
//! arrangements before it is absorbed by a detector. Bins are zero-based.

mod amplitudes;
mod config;
mod distribution;
mod operators;

pub use amplitudes::{
    conditional_amplitudes, slit_amplitudes, ConditionalAmplitudes, SlitAmplitudes,
};
pub use config::{Envelope, EraserConfig};
pub use distribution::{
    detection_basis, detection_state, joint_distribution, reduced_detection_state,
    JointDistribution, JointEntry, ReducedState, ScreenOutcome, TraceOut, CLICK, NO_CLICK,
};
pub use operators::{
    build_crystal, build_idler_optics, build_screen, compose_delayed_eraser,
    compose_nondelayed_eraser, hadamard, lift_to_idler, lift_to_slit_space, mirror, pair_index,
    phase_flip, slit_index, verify_eraser_identity, Detector, EraserExperiment,
    EraserIdentityReport, EraserOperators, IdlerOptics, Slit,
};
