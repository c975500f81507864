//! Pulse design for N-pod quantum systems by inverse engineering of
//! user-defined passages (STIRUP), with STIRAP and resonant-Rabi baselines,
//! closed- and open-system simulation, amplitude-budget optimization, and a
//! superconducting qubits-plus-cavity realization.
//!
//! Internal units: time in ns, rates and amplitudes in rad/ns, ħ = 1.

pub mod circuit;
pub mod optimize;
pub mod passage;
pub mod pulses;
pub mod quantum;

pub use circuit::{CircuitModel, HardwareSchedule, ScenarioName, SingleExcitationMap};
pub use passage::{AmplitudeSchedule, AngleSchedule, PassageSpec};
pub use pulses::{ControlPulses, ProtocolKind};
pub use quantum::{
    CollapseChannel, DensityMatrix, HamiltonianFn, StateVector, TimeGrid, Trajectory,
};
