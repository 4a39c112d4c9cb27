//! Dense pure-state vectors.
//!
//! Basis index `k` is read with qubit 0 as the most significant bit, so the
//! ket `|q0 q1 q2⟩ = |abc⟩` lives at index `4a + 2b + c`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Amplitude = Complex64;

/// Upper bound on register width for anything that allocates a dense state.
pub const MAX_QUBITS: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

impl StateVector {
    /// Wraps an amplitude buffer. The length must be `2^ν` with `ν ≥ 1` and
    /// every entry finite. Normalization is not enforced here so that
    /// intermediate workspace vectors can be represented too.
    pub fn from_amplitudes(amplitudes: Vec<Amplitude>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::domain(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::domain("amplitudes must be finite"));
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Real-valued convenience constructor.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::from_amplitudes(values.iter().map(|&v| Amplitude::new(v, 0.0)).collect())
    }

    pub(crate) fn from_parts_unchecked(num_qubits: usize, amplitudes: Vec<Amplitude>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_qubits);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amplitudes[index]
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amplitudes
    }

    /// Rescales to unit norm. Fails on the zero vector.
    pub fn normalized(mut self) -> Result<Self> {
        let n = state_norm(&self);
        if n == 0.0 {
            return Err(Error::Degenerate("cannot normalize the zero vector".into()));
        }
        for a in &mut self.amplitudes {
            *a /= n;
        }
        Ok(self)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Amplitude> {
        self.check_same_width(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`, which ignores global phase.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        self.inner(other).map(|z| z.norm())
    }

    /// Basis indices with `|amplitude| > tol`, in ascending order.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > tol)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_same_width(&self, other: &StateVector) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::domain(format!(
                "qubit count mismatch: {} vs {}",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(())
    }
}

/// Ket label for a basis index, qubit 0 first, e.g. `|011⟩`.
pub fn basis_label(index: usize, num_qubits: usize) -> String {
    let mut s = String::with_capacity(num_qubits + 4);
    s.push('|');
    for q in 0..num_qubits {
        let bit = (index >> (num_qubits - 1 - q)) & 1;
        s.push(if bit == 1 { '1' } else { '0' });
    }
    s.push('⟩');
    s
}

/// The computational basis state `|index⟩` on `num_qubits` qubits.
pub fn basis_state(num_qubits: usize, index: usize) -> Result<StateVector> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::domain(format!(
            "qubit count {num_qubits} outside 1..={MAX_QUBITS}"
        )));
    }
    let dim = 1usize << num_qubits;
    if index >= dim {
        return Err(Error::domain(format!(
            "basis index {index} out of range for {num_qubits} qubits"
        )));
    }
    let mut amplitudes = vec![Amplitude::new(0.0, 0.0); dim];
    amplitudes[index] = Amplitude::new(1.0, 0.0);
    Ok(StateVector::from_parts_unchecked(num_qubits, amplitudes))
}

/// Euclidean norm `√(Σ |a_k|²)`.
pub fn state_norm(state: &StateVector) -> f64 {
    state
        .amplitudes
        .iter()
        .map(|a| a.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Component-wise comparison; sensitive to global phase.
pub fn states_close(a: &StateVector, b: &StateVector, tol: f64) -> Result<bool> {
    a.check_same_width(b)?;
    Ok(max_abs_diff(a.amplitudes(), b.amplitudes()) <= tol)
}

pub(crate) fn max_abs_diff(a: &[Amplitude], b: &[Amplitude]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Polar and azimuthal angles of a single-qubit state on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub theta: f64,
    pub phi: f64,
}

impl BlochPoint {
    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn to_state(self) -> StateVector {
        let (s, c) = (self.theta / 2.0).sin_cos();
        StateVector::from_parts_unchecked(
            1,
            vec![Amplitude::new(c, 0.0), Amplitude::from_polar(s, self.phi)],
        )
    }
}

const POLE_TOL: f64 = 1e-15;

/// Maps a unit single-qubit state to its Bloch sphere point. `φ` is set to
/// 0 at the poles where it is undefined.
pub fn bloch_coordinates(state: &StateVector) -> Result<BlochPoint> {
    if state.num_qubits != 1 {
        return Err(Error::domain(format!(
            "Bloch coordinates need a single qubit, got {}",
            state.num_qubits
        )));
    }
    let (alpha, beta) = (state.amplitudes[0], state.amplitudes[1]);
    let (ra, rb) = (alpha.norm(), beta.norm());
    if rb <= POLE_TOL {
        return Ok(BlochPoint { theta: 0.0, phi: 0.0 });
    }
    if ra <= POLE_TOL {
        return Ok(BlochPoint { theta: PI, phi: 0.0 });
    }
    let theta = 2.0 * rb.atan2(ra);
    let mut phi = (beta.arg() - alpha.arg()).rem_euclid(2.0 * PI);
    if phi >= 2.0 * PI {
        phi = 0.0;
    }
    Ok(BlochPoint { theta, phi })
}
