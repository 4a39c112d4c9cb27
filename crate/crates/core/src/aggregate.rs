//! Edge detection over a time series of frames and reduction of the
//! per-frame results into one vector or mask.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::encoding::{amplitude_encode, real_coefficients, Dims, Volume};
use crate::error::{Error, Result};
use crate::qhed::{boundary_mask, edge_detect, BoundaryMask, EdgeVector};

/// Frames with a shared grid and strictly increasing time stamps.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    frames: Vec<Volume>,
}

impl TimeSeries {
    pub fn new(frames: Vec<Volume>) -> Result<Self> {
        let first = frames
            .first()
            .ok_or_else(|| Error::domain("time series needs at least one frame"))?;
        let dims = first.dims();
        for pair in frames.windows(2) {
            if pair[1].time() <= pair[0].time() {
                return Err(Error::domain(format!(
                    "time stamps must increase strictly ({} then {})",
                    pair[0].time(),
                    pair[1].time()
                )));
            }
        }
        if let Some(f) = frames.iter().find(|f| f.dims() != dims) {
            return Err(Error::domain(format!(
                "frame at time {} has dims {:?}, expected {:?}",
                f.time(),
                f.dims(),
                dims
            )));
        }
        Ok(Self { frames })
    }

    pub fn frames(&self) -> &[Volume] {
        &self.frames
    }

    pub fn dims(&self) -> Dims {
        self.frames[0].dims()
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Per-frame edges and masks, in frame order.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSeries {
    pub entries: Vec<EdgeVector>,
    pub masks: Vec<BoundaryMask>,
}

impl EdgeSeries {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Each frame's edges multiplied by its own norm factor, so frames of
    /// different brightness are compared in pixel units.
    pub fn rescaled_by_norm(&self) -> Vec<EdgeVector> {
        self.entries
            .iter()
            .map(|e| e.scaled(e.meta.norm_factor))
            .collect()
    }
}

fn process_frame(frame: &Volume, epsilon: f64, drop_wraparound: bool) -> Result<(EdgeVector, BoundaryMask)> {
    let (state, meta) = amplitude_encode(frame)?;
    let coeffs = real_coefficients(&state)?;
    let edges = edge_detect(&coeffs, &meta, frame.time())?;
    let mask = boundary_mask(&edges, epsilon, drop_wraparound)?;
    Ok((edges, mask))
}

/// Encodes and edge-detects every frame. Frames are independent, so the
/// result does not depend on `exec`. On failure the earliest failing frame
/// is reported.
pub fn process_series(
    series: &TimeSeries,
    epsilon: f64,
    drop_wraparound: bool,
    exec: Execution,
) -> Result<EdgeSeries> {
    let results: Vec<Result<(EdgeVector, BoundaryMask)>> = match exec {
        Execution::Sequential => series
            .frames
            .iter()
            .map(|f| process_frame(f, epsilon, drop_wraparound))
            .collect(),
        Execution::Parallel => series
            .frames
            .par_iter()
            .map(|f| process_frame(f, epsilon, drop_wraparound))
            .collect(),
    };
    let mut entries = Vec::with_capacity(results.len());
    let mut masks = Vec::with_capacity(results.len());
    for r in results {
        let (e, m) = r?;
        entries.push(e);
        masks.push(m);
    }
    Ok(EdgeSeries { entries, masks })
}

/// Component-wise mean of the edge vectors. A running mean is used so that
/// a series of identical frames reproduces its common vector exactly.
pub fn aggregate_average(entries: &[EdgeVector]) -> Result<Vec<f64>> {
    let first = entries
        .first()
        .ok_or_else(|| Error::domain("cannot average an empty series"))?;
    let len = first.len();
    if entries.iter().any(|e| e.len() != len) {
        return Err(Error::domain("edge vectors have different lengths"));
    }
    let mut mean = first.coefficients.clone();
    for (t, e) in entries.iter().enumerate().skip(1) {
        let count = (t + 1) as f64;
        for (m, x) in mean.iter_mut().zip(&e.coefficients) {
            *m += (x - *m) / count;
        }
    }
    Ok(mean)
}

/// Which vote wins in [`aggregate_mode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModePreference {
    /// The value seen most often.
    Most,
    /// The value seen least often among those that occur.
    Least,
}

impl FromStr for ModePreference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "most" => Ok(ModePreference::Most),
            "least" => Ok(ModePreference::Least),
            _ => Err(Error::domain(format!("unknown mode preference '{s}'"))),
        }
    }
}

impl fmt::Display for ModePreference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModePreference::Most => "most",
            ModePreference::Least => "least",
        })
    }
}

/// Per-position vote over boolean masks. Ties give `false`.
pub fn aggregate_mode(masks: &[BoundaryMask], prefer: ModePreference) -> Result<BoundaryMask> {
    let first = masks
        .first()
        .ok_or_else(|| Error::domain("cannot take the mode of an empty list"))?;
    let len = first.len();
    if masks.iter().any(|m| m.len() != len) {
        return Err(Error::domain("masks have different lengths"));
    }
    if masks.iter().any(|m| m.epsilon != first.epsilon) {
        return Err(Error::domain("masks were built with different thresholds"));
    }
    let total = masks.len();
    let bits = (0..len)
        .map(|j| {
            let ones = masks.iter().filter(|m| m.bits[j]).count();
            let zeros = total - ones;
            match prefer {
                ModePreference::Most => ones > zeros,
                ModePreference::Least => {
                    if zeros == 0 {
                        true
                    } else if ones == 0 {
                        false
                    } else {
                        ones < zeros
                    }
                }
            }
        })
        .collect();
    Ok(BoundaryMask {
        bits,
        epsilon: first.epsilon,
        wraparound_removed: masks.iter().all(|m| m.wraparound_removed),
    })
}
