//! Reversible oracles `U_f |x, y⟩ = |x, y ⊕ f(x)⟩` for boolean functions
//! with `m` input and `k` output bits.
//!
//! Register layout: the `m` input qubits are the high-order qubits
//! `0..m` and the `k` output qubits are `m..m+k`, so basis index
//! `(x << k) | y` is the ket `|x, y⟩`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{apply_unitary, standard_gate, Gate, GateName};
use crate::state::{basis_state, Amplitude, StateVector, MAX_QUBITS};

/// Largest register `parallel_evaluate` will simulate.
pub const MAX_PARALLEL_QUBITS: usize = 24;

/// Largest register for which a dense oracle matrix is materialized.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Truth table of `f: {0,1}^m -> {0,1}^k`, indexed by the input value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    input_bits: usize,
    output_bits: usize,
    table: Vec<u64>,
}

impl BooleanFunction {
    pub fn new(input_bits: usize, output_bits: usize, table: Vec<u64>) -> Result<Self> {
        if input_bits == 0 || output_bits == 0 {
            return Err(Error::domain("input and output bit counts must be at least 1"));
        }
        if input_bits + output_bits > MAX_QUBITS {
            return Err(Error::Resource(format!(
                "m + k = {} exceeds {MAX_QUBITS}",
                input_bits + output_bits
            )));
        }
        if table.len() != 1 << input_bits {
            return Err(Error::domain(format!(
                "truth table has {} entries, expected {}",
                table.len(),
                1u64 << input_bits
            )));
        }
        let limit = 1u64 << output_bits;
        if let Some((x, v)) = table.iter().enumerate().find(|(_, &v)| v >= limit) {
            return Err(Error::domain(format!(
                "f({x}) = {v} does not fit in {output_bits} output bits"
            )));
        }
        Ok(Self {
            input_bits,
            output_bits,
            table,
        })
    }

    /// Builds the table by evaluating `f` on every input.
    pub fn from_fn(input_bits: usize, output_bits: usize, f: impl Fn(u64) -> u64) -> Result<Self> {
        let table = (0..1u64 << input_bits).map(f).collect();
        Self::new(input_bits, output_bits, table)
    }

    pub fn input_bits(&self) -> usize {
        self.input_bits
    }

    pub fn output_bits(&self) -> usize {
        self.output_bits
    }

    pub fn width(&self) -> usize {
        self.input_bits + self.output_bits
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn eval(&self, x: usize) -> u64 {
        self.table[x]
    }
}

/// Text format: a header line `m k`, then `2^m` lines each holding one
/// output value, in input order. Blank lines are skipped.
impl FromStr for BooleanFunction {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty truth table"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(hline, "header must be 'm k'"));
        }
        let parse_count = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(hline, format!("invalid bit count '{s}'")))
        };
        let (m, k) = (parse_count(fields[0])?, parse_count(fields[1])?);
        if m == 0 || k == 0 || m + k > MAX_QUBITS {
            return Err(Error::parse(hline, format!("unsupported sizes m={m}, k={k}")));
        }
        let expected = 1usize << m;
        let mut table = Vec::with_capacity(expected);
        let mut last_line = hline;
        for (lineno, line) in lines {
            last_line = lineno;
            if table.len() == expected {
                return Err(Error::parse(lineno, "more entries than 2^m"));
            }
            let v: u64 = line
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid output value '{line}'")))?;
            if v >= 1 << k {
                return Err(Error::parse(lineno, format!("value {v} does not fit in {k} bits")));
            }
            table.push(v);
        }
        if table.len() != expected {
            return Err(Error::parse(
                last_line,
                format!("expected {expected} entries, found {}", table.len()),
            ));
        }
        BooleanFunction::new(m, k, table)
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.input_bits, self.output_bits)?;
        for v in &self.table {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `U_f` kept as a basis permutation: `image[i]` is where basis state `i`
/// is sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oracle {
    width: usize,
    image: Vec<usize>,
}

impl Oracle {
    pub fn new(f: &BooleanFunction) -> Self {
        let k = f.output_bits;
        let image = (0..1usize << f.width())
            .map(|i| {
                let (x, y) = (i >> k, i & ((1 << k) - 1));
                (x << k) | (y ^ f.table[x] as usize)
            })
            .collect();
        Self {
            width: f.width(),
            image,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Applies the permutation to a register of exactly `width` qubits.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.num_qubits() != self.width {
            return Err(Error::domain(format!(
                "oracle acts on {} qubits, state has {}",
                self.width,
                state.num_qubits()
            )));
        }
        let mut out = vec![Amplitude::new(0.0, 0.0); state.dim()];
        for (i, a) in state.amplitudes().iter().enumerate() {
            out[self.image[i]] = *a;
        }
        StateVector::from_amplitudes(out)
    }

    /// Dense permutation matrix; row `image[i]`, column `i` holds the 1.
    pub fn to_gate(&self) -> Result<Gate> {
        if self.width > MAX_DENSE_QUBITS {
            return Err(Error::Resource(format!(
                "dense oracle on {} qubits exceeds {MAX_DENSE_QUBITS}",
                self.width
            )));
        }
        let dim = self.image.len();
        let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (col, &row) in self.image.iter().enumerate() {
            m[row * dim + col] = Complex64::new(1.0, 0.0);
        }
        Ok(Gate::from_parts_unchecked(self.width, m))
    }
}

/// Dense `U_f` as a gate of arity `m + k`.
pub fn build_oracle(f: &BooleanFunction) -> Result<Gate> {
    Oracle::new(f).to_gate()
}

/// Prepares `|0…0⟩`, puts every input qubit through `H` and applies `U_f`,
/// giving `2^{-m/2} Σ_x |x, f(x)⟩`.
pub fn parallel_evaluate(f: &BooleanFunction) -> Result<StateVector> {
    if f.width() > MAX_PARALLEL_QUBITS {
        return Err(Error::Resource(format!(
            "register of {} qubits exceeds {MAX_PARALLEL_QUBITS}",
            f.width()
        )));
    }
    let h = standard_gate(GateName::H);
    let mut state = basis_state(f.width(), 0)?;
    for q in 0..f.input_bits {
        state = apply_unitary(&state, &h, &[q])?;
    }
    Oracle::new(f).apply(&state)
}
