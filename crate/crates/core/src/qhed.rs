//! Hadamard edge detection on amplitude-encoded coefficient vectors.
//!
//! The `P` coefficients are doubled into the `2P` vector of neighbour
//! pairs `(c_j, c_{j+1 mod P})`, each pair is sent through `H`, and the odd
//! (difference) slots are kept:
//!
//! ```text
//! (c_0, …, c_{P-1}) ↦ (c_0, c_1, c_1, c_2, …, c_{P-1}, c_0)
//!                   ↦ (c_0+c_1, c_0-c_1, …, c_{P-1}+c_{P-1}, c_{P-1}-c_0)/√2
//!                   ↦ (c_0-c_1, c_1-c_2, …, c_{P-1}-c_0)/√2
//! ```
//!
//! The middle step is `H` on the lowest-order qubit of a `2P` register,
//! i.e. `I_P ⊗ H` in the basis ordering used throughout the crate.

use std::f64::consts::SQRT_2;

use crate::encoding::EncodingMeta;
use crate::error::{Error, Result};

/// Default threshold for calling a difference non-zero.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// `(c_0, c_1, c_1, c_2, …, c_{P-1}, c_0)`.
pub fn cyclic_double(coeffs: &[f64]) -> Result<Vec<f64>> {
    let p = coeffs.len();
    if p < 2 {
        return Err(Error::domain(format!("need at least 2 coefficients, got {p}")));
    }
    let mut out = Vec::with_capacity(2 * p);
    for j in 0..p {
        out.push(coeffs[j]);
        out.push(coeffs[(j + 1) % p]);
    }
    Ok(out)
}

/// Sends every adjacent pair `(u, v)` to `((u+v)/√2, (u-v)/√2)`.
pub fn pairwise_hadamard(doubled: &[f64]) -> Result<Vec<f64>> {
    if !doubled.len().is_multiple_of(2) {
        return Err(Error::domain(format!("odd length {}", doubled.len())));
    }
    let mut out = Vec::with_capacity(doubled.len());
    for pair in doubled.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        out.push((u + v) / SQRT_2);
        out.push((u - v) / SQRT_2);
    }
    Ok(out)
}

/// Keeps the difference components, i.e. the odd positions.
pub fn project_differences(transformed: &[f64]) -> Result<Vec<f64>> {
    if !transformed.len().is_multiple_of(2) {
        return Err(Error::domain(format!("odd length {}", transformed.len())));
    }
    Ok(transformed.iter().skip(1).step_by(2).copied().collect())
}

/// Difference coefficients of one frame. Entry `j` is
/// `(c_j - c_{(j+1) mod P})/√2`; the values are not renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeVector {
    pub coefficients: Vec<f64>,
    pub frame_time: u32,
    pub meta: EncodingMeta,
}

impl EdgeVector {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Same edges multiplied by `factor`, e.g. the frame's norm factor to
    /// express differences in pixel units.
    pub fn scaled(&self, factor: f64) -> EdgeVector {
        EdgeVector {
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }

    /// Whether pair `j` compares two pixels that are not neighbours on the
    /// original grid: column and slab seams, anything touching padding, and
    /// the closing `c_{P-1} - c_0` term.
    pub fn is_seam(&self, j: usize) -> bool {
        let dims = self.meta.original_dims;
        let n = dims.len();
        if j + 1 >= n {
            return true;
        }
        let (a, b) = (dims.position(j), dims.position(j + 1));
        let dist = a.0.abs_diff(b.0) + a.1.abs_diff(b.1) + a.2.abs_diff(b.2);
        dist != 1
    }
}

/// `project_differences(pairwise_hadamard(cyclic_double(coeffs)))`.
pub fn edge_detect(coeffs: &[f64], meta: &EncodingMeta, frame_time: u32) -> Result<EdgeVector> {
    if coeffs.len() != meta.padded_length {
        return Err(Error::domain(format!(
            "{} coefficients but the encoding has padded length {}",
            coeffs.len(),
            meta.padded_length
        )));
    }
    let doubled = cyclic_double(coeffs)?;
    let transformed = pairwise_hadamard(&doubled)?;
    let coefficients = project_differences(&transformed)?;
    Ok(EdgeVector {
        coefficients,
        frame_time,
        meta: *meta,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMask {
    pub bits: Vec<bool>,
    pub epsilon: f64,
    pub wraparound_removed: bool,
}

impl BoundaryMask {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Flat positions flagged as boundaries.
    pub fn positions(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| j)
            .collect()
    }
}

/// Flags `|coefficient| > epsilon`. With `drop_wraparound`, seam positions
/// (see [`EdgeVector::is_seam`]) are cleared.
pub fn boundary_mask(edges: &EdgeVector, epsilon: f64, drop_wraparound: bool) -> Result<BoundaryMask> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::domain(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let bits = edges
        .coefficients
        .iter()
        .enumerate()
        .map(|(j, c)| c.abs() > epsilon && !(drop_wraparound && edges.is_seam(j)))
        .collect();
    Ok(BoundaryMask {
        bits,
        epsilon,
        wraparound_removed: drop_wraparound,
    })
}
