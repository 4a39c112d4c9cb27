//! State-vector simulation of small quantum circuits and oracles, plus a
//! Hadamard edge detector for amplitude-encoded, time-stamped 3D volumes.
//!
//! Basis states are indexed with qubit 0 as the most significant bit.

pub mod aggregate;
pub mod circuit;
pub mod classical;
pub mod cli;
pub mod encoding;
pub mod error;
pub mod gates;
pub mod oracle;
pub mod qhed;
pub mod state;

pub use aggregate::{
    aggregate_average, aggregate_mode, process_series, EdgeSeries, Execution, ModePreference,
    TimeSeries,
};
pub use circuit::{ghz_state, run_circuit, CircuitStep};
pub use classical::{
    classical_edge_oracle, cost, fit_linear, gradient, hypothesis, RegressionModel, TrainingSet,
};
pub use encoding::{amplitude_encode, decode, flatten, Dims, EncodingMeta, Volume};
pub use error::{Error, Result};
pub use gates::{apply_unitary, standard_gate, tensor, Gate, GateName};
pub use oracle::{build_oracle, parallel_evaluate, BooleanFunction, Oracle};
pub use qhed::{
    boundary_mask, cyclic_double, edge_detect, pairwise_hadamard, project_differences,
    BoundaryMask, EdgeVector,
};
pub use state::{basis_state, bloch_coordinates, state_norm, states_close, Amplitude, BlochPoint, StateVector};
