//! Gate sequences and the GHZ preparation circuit.
//!
//! The drawn GHZ circuit is `H` on every qubit, a CZ from qubit 0 to each
//! other qubit, then `H` on qubits `1..n`. Since `H·CZ·H` on the target is a
//! CNOT, this is the same operator as `H` on qubit 0 followed by a CNOT
//! fan-out, which is how the construction is usually narrated.

use crate::error::{Error, Result};
use crate::gates::{apply_unitary, standard_gate, validate_targets, Gate, GateName};
use crate::state::{basis_state, StateVector, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitStep {
    pub gate: Gate,
    pub targets: Vec<usize>,
}

impl CircuitStep {
    pub fn new(gate: Gate, targets: Vec<usize>) -> Self {
        Self { gate, targets }
    }

    pub fn standard(name: GateName, targets: &[usize]) -> Self {
        Self::new(standard_gate(name), targets.to_vec())
    }

    pub fn validate(&self, width: usize) -> Result<()> {
        validate_targets(&self.targets, self.gate.arity(), width)
    }
}

/// Applies the steps left to right.
pub fn run_circuit(initial: &StateVector, steps: &[CircuitStep]) -> Result<StateVector> {
    let width = initial.num_qubits();
    for (i, step) in steps.iter().enumerate() {
        step.validate(width)
            .map_err(|e| Error::domain(format!("step {i}: {e}")))?;
    }
    let mut state = initial.clone();
    for step in steps {
        state = apply_unitary(&state, &step.gate, &step.targets)?;
    }
    Ok(state)
}

fn check_ghz_width(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("GHZ state needs at least 2 qubits, got {n}")));
    }
    if n > MAX_QUBITS {
        return Err(Error::Resource(format!("{n} qubits exceeds the {MAX_QUBITS}-qubit limit")));
    }
    Ok(())
}

/// The two Hadamard layers of the GHZ circuit with the CZ couplings left
/// out: `H` on every qubit, then `H` again on qubits `1..n`.
pub fn ghz_hadamard_layers(n: usize) -> Result<Vec<CircuitStep>> {
    check_ghz_width(n)?;
    let first = (0..n).map(|q| CircuitStep::standard(GateName::H, &[q]));
    let second = (1..n).map(|q| CircuitStep::standard(GateName::H, &[q]));
    Ok(first.chain(second).collect())
}

/// The drawn circuit: H layer, CZ fan-out from qubit 0, H on `1..n`.
pub fn ghz_steps(n: usize) -> Result<Vec<CircuitStep>> {
    check_ghz_width(n)?;
    let mut steps: Vec<CircuitStep> = (0..n)
        .map(|q| CircuitStep::standard(GateName::H, &[q]))
        .collect();
    steps.extend((1..n).map(|q| CircuitStep::standard(GateName::Cz, &[0, q])));
    steps.extend((1..n).map(|q| CircuitStep::standard(GateName::H, &[q])));
    Ok(steps)
}

/// The narrated form: `H` on qubit 0 then CNOTs from qubit 0 to the rest.
pub fn ghz_cnot_steps(n: usize) -> Result<Vec<CircuitStep>> {
    check_ghz_width(n)?;
    let mut steps = vec![CircuitStep::standard(GateName::H, &[0])];
    steps.extend((1..n).map(|q| CircuitStep::standard(GateName::Cnot, &[0, q])));
    Ok(steps)
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits, built with [`ghz_steps`].
pub fn ghz_state(n: usize) -> Result<StateVector> {
    let steps = ghz_steps(n)?;
    run_circuit(&basis_state(n, 0)?, &steps)
}
