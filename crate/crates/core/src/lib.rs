//! Exact single-spin NMR pulse simulation and two-input logic gate synthesis.
//!
//! The crate is layered bottom-up:
//!
//! * [`matrix`]: 2×2 complex matrices;
//! * [`spin`]: spin operators, pulse propagators, density matrices and the
//!   magnetization readout;
//! * [`observables`]: closed-form and propagated one- and two-pulse
//!   observables;
//! * [`scenario`]: binding two pulse parameters as logic inputs;
//! * [`gates`]: truth tables, canalising profiles, classes and orbits;
//! * [`synthesis`]: exhaustive search for gate realizations;
//! * [`verify`]: recomputation of the reference gate tables and capability
//!   checks.

pub mod error;
pub mod gates;
pub mod grid;
pub mod matrix;
pub mod observables;
pub mod scenario;
pub mod spin;
pub mod synthesis;
pub mod verify;

pub use error::{Error, Result};
pub use gates::{canalising_counts, gate_class, is_canalising_value, orbit, CanalisingProfile, GateClass, Input, TruthTable};
pub use grid::{GridSpec, Surface};
pub use matrix::{commutator, commutes, Mat2, C64, DEFAULT_TOL};
pub use observables::{
    fixed_special_formula, single_pulse_from_x, single_pulse_from_z, two_pulse_example_formula, two_pulse_magnetization,
    two_pulse_observable, FixedCase, InitialState, ObservableKind, TwoPulseExample,
};
pub use scenario::{evaluate_scenario, magnetization_grid, observable_grid, PulseCount, PulseParam, Scenario};
pub use spin::{
    magnetization, propagate, rot_axis, rot_phi, sequence_propagator, spin_operator, spin_vector,
    superposition_x_state, thermal_state, Axis, DensityMatrix, Magnetization, Pulse, PulseSequence, SpinOperator,
};
pub use synthesis::{
    achievable_classes, assignment_realizes, synthesize, GateAssignment, LevelMap, LevelPolicy, SynthesisOptions,
};
