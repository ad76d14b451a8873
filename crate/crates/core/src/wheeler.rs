//! Wheeler's delayed choice experiment in a Mach–Zehnder interferometer.
//!
//! The photon lives in `C²` with basis `{↑, ↓}`; the quantum random bit that
//! switches the second beamsplitter lives in `C²` with basis `{off, on}`. The
//! joint basis is ordered `↑off, ↑on, ↓off, ↓on`.
//!
//! Stages are numbered 1..4: the first beamsplitter acts between t=1 and
//! t=2, the mirrors between t=2 and t=3, and the second beamsplitter (or the
//! randomizer followed by the controlled beamsplitter) between t=3 and t=4.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{
    apply, born_distribution, real_matrix, tensor_product, Basis, ComplexMatrix, Factor,
    ProbabilityMap, QuantumState,
};

pub fn photon_factor() -> Factor {
    Factor::new("photon", ["↑", "↓"])
}

pub fn randomizer_factor() -> Factor {
    Factor::new("randomizer", ["off", "on"])
}

pub fn photon_basis() -> Basis {
    Basis::new(vec![photon_factor()])
}

/// `photon ⊗ randomizer`, ordered `↑off, ↑on, ↓off, ↓on`.
pub fn joint_basis() -> Basis {
    Basis::new(vec![photon_factor(), randomizer_factor()])
}

/// The three set-ups: without second beamsplitter, with it, and with the
/// beamsplitter switched by a quantum random bit after the mirrors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scenario {
    Open = 1,
    Closed = 2,
    DelayedChoice = 3,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::Open, Scenario::Closed, Scenario::DelayedChoice];

    pub fn id(self) -> u8 {
        self as u8
    }
}

impl TryFrom<u8> for Scenario {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Scenario::Open),
            2 => Ok(Scenario::Closed),
            3 => Ok(Scenario::DelayedChoice),
            other => Err(Error::Argument(format!(
                "unknown Wheeler scenario {other}; expected 1, 2 or 3"
            ))),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WheelerGateSet {
    /// Beamsplitter (Hadamard).
    pub h: ComplexMatrix,
    /// Mirrors.
    pub x: ComplexMatrix,
    /// Beamsplitter on the photon controlled by the randomizer being `on`.
    pub r: ComplexMatrix,
    /// Randomizer initialisation, `I ⊗ H`.
    pub rng_gate: ComplexMatrix,
    /// `diag(1, −1)`, equal to `H·X·H`.
    pub y: ComplexMatrix,
}

impl WheelerGateSet {
    pub fn new() -> Self {
        let s = FRAC_1_SQRT_2;
        let h = real_matrix(&[&[s, s], &[s, -s]]);
        let x = real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let r = real_matrix(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, s, 0.0, s],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, s, 0.0, -s],
        ]);
        let rng_gate = tensor_product(&ComplexMatrix::identity(2), &h).expect("2x2 ⊗ 2x2");
        let y = real_matrix(&[&[1.0, 0.0], &[0.0, -1.0]]);
        Self {
            h,
            x,
            r,
            rng_gate,
            y,
        }
    }

    /// `H ⊗ I` on photon ⊗ randomizer.
    pub fn beamsplitter_lifted(&self) -> ComplexMatrix {
        tensor_product(&self.h, &ComplexMatrix::identity(2)).expect("2x2 ⊗ 2x2")
    }

    /// `X ⊗ I` on photon ⊗ randomizer.
    pub fn mirrors_lifted(&self) -> ComplexMatrix {
        tensor_product(&self.x, &ComplexMatrix::identity(2)).expect("2x2 ⊗ 2x2")
    }
}

impl Default for WheelerGateSet {
    fn default() -> Self {
        Self::new()
    }
}

/// The explicit composite operator of the delayed choice set-up, written out
/// entry by entry.
pub fn explicit_composite() -> ComplexMatrix {
    let r2 = std::f64::consts::SQRT_2;
    real_matrix(&[
        &[1.0, 1.0, -1.0, -1.0],
        &[r2, -r2, 0.0, 0.0],
        &[1.0, 1.0, 1.0, 1.0],
        &[0.0, 0.0, -r2, r2],
    ])
    .scale(crate::qcore::c(0.5, 0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub t: u8,
    pub state: QuantumState,
    /// Operator mapping the previous stage onto this one; `None` at t=1.
    pub operator: Option<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WheelerTimeline {
    pub scenario: Scenario,
    pub stages: Vec<Stage>,
}

impl WheelerTimeline {
    pub fn final_state(&self) -> &QuantumState {
        &self.stages.last().expect("timelines are never empty").state
    }

    pub fn state_at(&self, t: u8) -> Option<&QuantumState> {
        self.stages.iter().find(|s| s.t == t).map(|s| &s.state)
    }
}

/// Evolves the scenario's initial state stage by stage.
pub fn scenario_states(scenario: Scenario) -> WheelerTimeline {
    let gates = WheelerGateSet::new();
    let (initial, operators) = match scenario {
        Scenario::Open => (
            QuantumState::basis_state(photon_basis(), "↓"),
            vec![gates.h.clone(), gates.x.clone()],
        ),
        Scenario::Closed => (
            QuantumState::basis_state(photon_basis(), "↓"),
            vec![gates.h.clone(), gates.x.clone(), gates.h.clone()],
        ),
        Scenario::DelayedChoice => (
            QuantumState::basis_state(joint_basis(), "↓off"),
            vec![
                gates.beamsplitter_lifted(),
                gates.mirrors_lifted(),
                gates.r.matmul(&gates.rng_gate).expect("4x4 · 4x4"),
            ],
        ),
    };
    let initial = initial.expect("label exists in basis");

    let mut stages = vec![Stage {
        t: 1,
        state: initial,
        operator: None,
    }];
    for (t, op) in (2u8..).zip(operators) {
        let prev = &stages.last().expect("non-empty").state;
        let state = apply(&op, prev).expect("operators match the basis");
        stages.push(Stage {
            t,
            state,
            operator: Some(op),
        });
    }
    WheelerTimeline { scenario, stages }
}

/// `A = R ∘ (I⊗H) ∘ (X⊗I) ∘ (H⊗I)`: the randomizer fires after the mirrors.
pub fn compose_delayed() -> ComplexMatrix {
    let g = WheelerGateSet::new();
    chain(&[
        &g.beamsplitter_lifted(),
        &g.mirrors_lifted(),
        &g.rng_gate,
        &g.r,
    ])
}

/// `A′ = R ∘ (X⊗I) ∘ (H⊗I) ∘ (I⊗H)`: the randomizer fires before the photon
/// reaches the first beamsplitter.
pub fn compose_nondelayed() -> ComplexMatrix {
    let g = WheelerGateSet::new();
    chain(&[
        &g.rng_gate,
        &g.beamsplitter_lifted(),
        &g.mirrors_lifted(),
        &g.r,
    ])
}

/// `[(X⊗I)(H⊗I), I⊗H]`, which vanishes.
pub fn optics_randomizer_commutator() -> ComplexMatrix {
    let g = WheelerGateSet::new();
    let optics = g
        .mirrors_lifted()
        .matmul(&g.beamsplitter_lifted())
        .expect("4x4 · 4x4");
    optics.commutator(&g.rng_gate).expect("4x4 commutator")
}

/// Operators in the order they act; returns `ops[n-1] ∘ … ∘ ops[0]`.
fn chain(ops: &[&ComplexMatrix]) -> ComplexMatrix {
    ops.iter().skip(1).fold(ops[0].clone(), |acc, op| {
        op.matmul(&acc).expect("4x4 · 4x4")
    })
}

/// Born distribution of the scenario's final state: over `{↑, ↓}` for
/// scenarios 1 and 2, over `{↑off, ↑on, ↓off, ↓on}` for scenario 3.
pub fn detector_distribution(scenario: Scenario) -> ProbabilityMap {
    born_distribution(scenario_states(scenario).final_state())
        .expect("final states are normalized")
        .distribution
}
