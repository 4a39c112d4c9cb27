//! Gate catalog, Kronecker products and application of small unitaries to
//! selected qubits of a register.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::state::{Amplitude, StateVector};

/// Registers at least this large are updated in parallel.
const PAR_THRESHOLD: usize = 1 << 14;

/// Max-entry tolerance for `U†U = I`.
pub const UNITARY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A unitary acting on `arity` qubits, stored as a dense row-major
/// `2^arity × 2^arity` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    arity: usize,
    matrix: Vec<Complex64>,
}

impl Gate {
    /// Builds a gate from a row-major matrix, checking shape and unitarity.
    pub fn new(arity: usize, matrix: Vec<Complex64>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::domain("gate arity must be at least 1"));
        }
        let dim = 1usize << arity;
        if matrix.len() != dim * dim {
            return Err(Error::domain(format!(
                "matrix has {} entries, expected {}",
                matrix.len(),
                dim * dim
            )));
        }
        let gate = Self { arity, matrix };
        let err = gate.unitarity_error();
        if err.is_nan() || err > UNITARY_TOL {
            return Err(Error::domain(format!(
                "matrix is not unitary (max |U†U - I| = {err:e})"
            )));
        }
        Ok(gate)
    }

    pub(crate) fn from_parts_unchecked(arity: usize, matrix: Vec<Complex64>) -> Self {
        Self { arity, matrix }
    }

    pub fn from_real(arity: usize, rows: &[f64]) -> Result<Self> {
        Self::new(arity, rows.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn identity(arity: usize) -> Self {
        let dim = 1usize << arity;
        let mut matrix = vec![ZERO; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = ONE;
        }
        Self { arity, matrix }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.dim() + col]
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Gate) -> Result<Gate> {
        if self.arity != other.arity {
            return Err(Error::domain("cannot compose gates of different arity"));
        }
        let d = self.dim();
        let mut out = vec![ZERO; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.matrix[r * d + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..d {
                    out[r * d + c] += a * other.matrix[k * d + c];
                }
            }
        }
        Ok(Gate::from_parts_unchecked(self.arity, out))
    }

    pub fn adjoint(&self) -> Gate {
        let d = self.dim();
        let mut out = vec![ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                out[c * d + r] = self.matrix[r * d + c].conj();
            }
        }
        Gate::from_parts_unchecked(self.arity, out)
    }

    /// Largest entry of `|U†U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.matrix[k * d + i].conj() * self.matrix[k * d + j];
                }
                if i == j {
                    acc -= ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Largest entry-wise distance to another gate of the same arity.
    pub fn max_entry_diff(&self, other: &Gate) -> f64 {
        if self.arity != other.arity {
            return f64::INFINITY;
        }
        self.matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when every row and column holds exactly one entry equal to 1
    /// and all others are exactly 0.
    pub fn is_permutation(&self) -> bool {
        let d = self.dim();
        let mut col_hits = vec![0usize; d];
        for r in 0..d {
            let mut row_hits = 0;
            for c in 0..d {
                let v = self.matrix[r * d + c];
                if v == ONE {
                    row_hits += 1;
                    col_hits[c] += 1;
                } else if v != ZERO {
                    return false;
                }
            }
            if row_hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
    }
}

/// Names accepted by [`standard_gate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateName {
    H,
    X,
    Y,
    Z,
    T,
    Cnot,
    Cz,
    I,
}

impl GateName {
    pub const ALL: [GateName; 8] = [
        GateName::H,
        GateName::X,
        GateName::Y,
        GateName::Z,
        GateName::T,
        GateName::Cnot,
        GateName::Cz,
        GateName::I,
    ];
}

impl FromStr for GateName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H" => Ok(GateName::H),
            "X" => Ok(GateName::X),
            "Y" => Ok(GateName::Y),
            "Z" => Ok(GateName::Z),
            "T" => Ok(GateName::T),
            "CNOT" | "CX" => Ok(GateName::Cnot),
            "CZ" => Ok(GateName::Cz),
            "I" => Ok(GateName::I),
            _ => Err(Error::domain(format!("unknown gate name '{s}'"))),
        }
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateName::H => "H",
            GateName::X => "X",
            GateName::Y => "Y",
            GateName::Z => "Z",
            GateName::T => "T",
            GateName::Cnot => "CNOT",
            GateName::Cz => "CZ",
            GateName::I => "I",
        };
        f.write_str(s)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The conventional matrix for a catalog gate. CNOT and CZ take the
/// control as their first qubit.
pub fn standard_gate(name: GateName) -> Gate {
    let h = FRAC_1_SQRT_2;
    let (arity, matrix) = match name {
        GateName::H => (1, vec![c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.)]),
        GateName::X => (1, vec![ZERO, ONE, ONE, ZERO]),
        GateName::Y => (1, vec![ZERO, c(0., -1.), c(0., 1.), ZERO]),
        GateName::Z => (1, vec![ONE, ZERO, ZERO, c(-1., 0.)]),
        GateName::T => (1, vec![ONE, ZERO, ZERO, Complex64::from_polar(1.0, FRAC_PI_4)]),
        GateName::I => (1, vec![ONE, ZERO, ZERO, ONE]),
        GateName::Cnot => {
            let mut m = Gate::identity(2).matrix;
            m[2 * 4 + 2] = ZERO;
            m[3 * 4 + 3] = ZERO;
            m[2 * 4 + 3] = ONE;
            m[3 * 4 + 2] = ONE;
            (2, m)
        }
        GateName::Cz => {
            let mut m = Gate::identity(2).matrix;
            m[3 * 4 + 3] = c(-1., 0.);
            (2, m)
        }
    };
    Gate::from_parts_unchecked(arity, matrix)
}

/// Parses a gate name and returns its matrix.
pub fn standard_gate_by_name(name: &str) -> Result<Gate> {
    name.parse().map(standard_gate)
}

/// Kronecker product `a ⊗ b`; `a` acts on the higher-order qubits.
pub fn tensor(a: &Gate, b: &Gate) -> Gate {
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let mut out = vec![ZERO; d * d];
    for ir in 0..da {
        for ic in 0..da {
            let av = a.matrix[ir * da + ic];
            if av == ZERO {
                continue;
            }
            for jr in 0..db {
                for jc in 0..db {
                    out[(ir * db + jr) * d + ic * db + jc] = av * b.matrix[jr * db + jc];
                }
            }
        }
    }
    Gate::from_parts_unchecked(a.arity + b.arity, out)
}

/// Checks that `targets` name `arity` distinct qubits below `width`.
pub(crate) fn validate_targets(targets: &[usize], arity: usize, width: usize) -> Result<()> {
    if targets.len() != arity {
        return Err(Error::domain(format!(
            "gate acts on {arity} qubits but {} targets were given",
            targets.len()
        )));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= width {
            return Err(Error::domain(format!(
                "target qubit {t} out of range for a {width}-qubit register"
            )));
        }
        if targets[..i].contains(&t) {
            return Err(Error::domain(format!("target qubit {t} listed twice")));
        }
    }
    Ok(())
}

/// Applies `gate` to the listed qubits and the identity elsewhere.
/// `targets[0]` maps to the most significant bit of the gate's local index.
pub fn apply_unitary(state: &StateVector, gate: &Gate, targets: &[usize]) -> Result<StateVector> {
    let width = state.num_qubits();
    validate_targets(targets, gate.arity, width)?;
    let amps = if gate.arity == 1 {
        apply_single(state.amplitudes(), gate, width - 1 - targets[0])
    } else {
        apply_multi(state.amplitudes(), gate, width, targets)
    };
    Ok(StateVector::from_parts_unchecked(width, amps))
}

/// Strided 2×2 update: each block of `2·stride` amplitudes holds the pairs
/// `(k, k + stride)` that differ only in the target bit.
fn apply_single(input: &[Amplitude], gate: &Gate, bit: usize) -> Vec<Amplitude> {
    let stride = 1usize << bit;
    let m = [gate.matrix[0], gate.matrix[1], gate.matrix[2], gate.matrix[3]];
    let mut out = input.to_vec();
    let kernel = |block: &mut [Amplitude]| {
        let (lo, hi) = block.split_at_mut(stride);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = m[0] * x + m[1] * y;
            *b = m[2] * x + m[3] * y;
        }
    };
    if out.len() >= PAR_THRESHOLD {
        out.par_chunks_mut(2 * stride).for_each(kernel);
    } else {
        out.chunks_mut(2 * stride).for_each(kernel);
    }
    out
}

/// General k-qubit update written as a gather so every output amplitude is
/// computed independently.
fn apply_multi(input: &[Amplitude], gate: &Gate, width: usize, targets: &[usize]) -> Vec<Amplitude> {
    let arity = gate.arity;
    let gd = gate.dim();
    let bits: Vec<usize> = targets.iter().map(|&t| width - 1 - t).collect();
    let mask: usize = bits.iter().map(|&b| 1usize << b).sum();
    // offsets[l] scatters local index l onto the register's target bits
    let offsets: Vec<usize> = (0..gd)
        .map(|l| {
            bits.iter()
                .enumerate()
                .filter(|(t, _)| (l >> (arity - 1 - t)) & 1 == 1)
                .map(|(_, &b)| 1usize << b)
                .sum()
        })
        .collect();
    let compute = |i: usize| -> Amplitude {
        let base = i & !mask;
        let row = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (t, &b)| acc | (((i >> b) & 1) << (arity - 1 - t)));
        let coeffs = &gate.matrix[row * gd..(row + 1) * gd];
        coeffs
            .iter()
            .zip(&offsets)
            .filter(|(u, _)| **u != ZERO)
            .map(|(u, &off)| u * input[base | off])
            .sum()
    };
    if input.len() >= PAR_THRESHOLD {
        (0..input.len()).into_par_iter().map(compute).collect()
    } else {
        (0..input.len()).map(compute).collect()
    }
}

/// Expands a gate acting on `targets` to the full `2^width` operator. Only
/// sensible for small registers; used to cross-check the strided kernels.
pub fn expand_to_register(gate: &Gate, targets: &[usize], width: usize) -> Result<Gate> {
    validate_targets(targets, gate.arity, width)?;
    let dim = 1usize << width;
    let mut matrix = vec![ZERO; dim * dim];
    for col in 0..dim {
        let mut unit = vec![ZERO; dim];
        unit[col] = ONE;
        let image = apply_unitary(&StateVector::from_parts_unchecked(width, unit), gate, targets)?;
        for (row, v) in image.amplitudes().iter().enumerate() {
            matrix[row * dim + col] = *v;
        }
    }
    Ok(Gate::from_parts_unchecked(width, matrix))
}
