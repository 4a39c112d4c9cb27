//! Time-stamped 3D volumes and their amplitude encoding.
//!
//! A volume of size `M × L × N` is flattened column by column: pixel
//! `(i, j, k)` (0-based) sits at flat position `i + j·M + k·M·L`, so the
//! first axis varies fastest. The flat vector is divided by its Euclidean
//! norm and zero-padded to the next power of two `P = 2^ν` to give the
//! amplitudes of a ν-qubit state.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::state::{Amplitude, StateVector, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub rows: usize,
    pub cols: usize,
    pub slices: usize,
}

impl Dims {
    pub fn new(rows: usize, cols: usize, slices: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || slices == 0 {
            return Err(Error::domain(format!(
                "dimensions must be positive, got {rows}x{cols}x{slices}"
            )));
        }
        let len = rows
            .checked_mul(cols)
            .and_then(|v| v.checked_mul(slices))
            .filter(|&v| v <= 1 << MAX_QUBITS)
            .ok_or_else(|| Error::Resource(format!("{rows}x{cols}x{slices} volume is too large")))?;
        debug_assert!(len > 0);
        Ok(Self { rows, cols, slices })
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols * self.slices
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat position of pixel `(i, j, k)`.
    pub fn flat_index(&self, i: usize, j: usize, k: usize) -> usize {
        i + j * self.rows + k * self.rows * self.cols
    }

    /// Inverse of [`Dims::flat_index`].
    pub fn position(&self, flat: usize) -> (usize, usize, usize) {
        let i = flat % self.rows;
        let j = (flat / self.rows) % self.cols;
        let k = flat / (self.rows * self.cols);
        (i, j, k)
    }

    /// Smallest `ν ≥ 1` with `2^ν ≥ len`.
    pub fn num_qubits(&self) -> usize {
        self.len().next_power_of_two().trailing_zeros().max(1) as usize
    }

    pub fn padded_length(&self) -> usize {
        1 << self.num_qubits()
    }
}

/// Non-negative pixel intensities on an `M × L × N` grid, stored in flat
/// order, with the frame's time stamp.
#[derive(Debug, Clone, PartialEq)]
pub struct Volume {
    dims: Dims,
    values: Vec<f64>,
    time: u32,
}

impl Volume {
    /// `values` must already be in flat order.
    pub fn new(dims: Dims, values: Vec<f64>, time: u32) -> Result<Self> {
        if values.len() != dims.len() {
            return Err(Error::domain(format!(
                "expected {} values for {}x{}x{}, got {}",
                dims.len(),
                dims.rows,
                dims.cols,
                dims.slices,
                values.len()
            )));
        }
        if let Some((p, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::domain(format!(
                "pixel {p} has value {v}; values must be finite and non-negative"
            )));
        }
        Ok(Self { dims, values, time })
    }

    pub fn from_fn(dims: Dims, time: u32, f: impl Fn(usize, usize, usize) -> f64) -> Result<Self> {
        let values = (0..dims.len())
            .map(|p| {
                let (i, j, k) = dims.position(p);
                f(i, j, k)
            })
            .collect();
        Self::new(dims, values, time)
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn time(&self) -> u32 {
        self.time
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[self.dims.flat_index(i, j, k)]
    }

    pub fn with_time(mut self, time: u32) -> Self {
        self.time = time;
        self
    }

    /// Parses the text format: header `M L N s`, then `M·L·N`
    /// whitespace-separated values in flat order.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .enumerate()
            .flat_map(|(n, line)| line.split_whitespace().map(move |t| (n + 1, t)));
        let mut header = [0u64; 4];
        for (slot, name) in header.iter_mut().zip(["M", "L", "N", "s"]) {
            let (line, tok) = tokens
                .next()
                .ok_or_else(|| Error::parse(1, format!("missing header field {name}")))?;
            *slot = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid {name} '{tok}'")))?;
        }
        let time = u32::try_from(header[3]).map_err(|_| Error::parse(1, "time stamp out of range"))?;
        let dims = Dims::new(header[0] as usize, header[1] as usize, header[2] as usize)
            .map_err(|e| Error::parse(1, e.to_string()))?;
        let mut values = Vec::with_capacity(dims.len());
        let mut last_line = 1;
        for (line, tok) in tokens {
            last_line = line;
            if values.len() == dims.len() {
                return Err(Error::parse(line, "more values than M*L*N"));
            }
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid value '{tok}'")))?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::parse(line, format!("value {v} must be finite and non-negative")));
            }
            values.push(v);
        }
        if values.len() != dims.len() {
            return Err(Error::parse(
                last_line,
                format!("expected {} values, found {}", dims.len(), values.len()),
            ));
        }
        Volume::new(dims, values, time)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.dims.rows, self.dims.cols, self.dims.slices, self.time
        );
        for chunk in self.values.chunks(self.dims.rows) {
            let line: Vec<String> = chunk.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Binary format: four little-endian `u32` (M, L, N, s) followed by
    /// `M·L·N` little-endian `f64` in flat order.
    pub fn read_binary(mut reader: impl Read) -> Result<Self> {
        let mut header = [0u8; 16];
        reader
            .read_exact(&mut header)
            .map_err(|_| Error::parse(0, "binary volume shorter than its 16-byte header"))?;
        let field = |i: usize| u32::from_le_bytes(header[4 * i..4 * i + 4].try_into().unwrap());
        let dims = Dims::new(field(0) as usize, field(1) as usize, field(2) as usize)
            .map_err(|e| Error::parse(0, e.to_string()))?;
        let time = field(3);
        let mut body = Vec::new();
        reader.read_to_end(&mut body)?;
        if body.len() != dims.len() * 8 {
            return Err(Error::parse(
                0,
                format!("binary body has {} bytes, expected {}", body.len(), dims.len() * 8),
            ));
        }
        let values = body
            .chunks_exact(8)
            .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
            .collect();
        Volume::new(dims, values, time).map_err(|e| Error::parse(0, e.to_string()))
    }

    pub fn write_binary(&self, mut writer: impl Write) -> Result<()> {
        let header = [self.dims.rows, self.dims.cols, self.dims.slices];
        for v in header {
            let v = u32::try_from(v).map_err(|_| Error::domain("dimension exceeds u32"))?;
            writer.write_all(&v.to_le_bytes())?;
        }
        writer.write_all(&self.time.to_le_bytes())?;
        for v in &self.values {
            writer.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn load(path: &Path, binary: bool) -> Result<Self> {
        let with_path = |e: Error| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        };
        if binary {
            let file = std::fs::File::open(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Self::read_binary(std::io::BufReader::new(file)).map_err(with_path)
        } else {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Self::parse_text(&text).map_err(with_path)
        }
    }
}

/// What is needed to undo an encoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodingMeta {
    pub original_dims: Dims,
    /// `(Σ v²)^{1/2}` of the source volume.
    pub norm_factor: f64,
    pub num_qubits: usize,
    pub padded_length: usize,
}

/// The volume's values in flat order.
pub fn flatten(volume: &Volume) -> Vec<f64> {
    volume.values.clone()
}

/// Normalized, zero-padded real coefficients and the encoding metadata.
pub fn encode_coefficients(volume: &Volume) -> Result<(Vec<f64>, EncodingMeta)> {
    let norm_factor = volume.values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm_factor == 0.0 {
        return Err(Error::Degenerate(format!(
            "frame at time {} has no non-zero pixel",
            volume.time
        )));
    }
    let dims = volume.dims;
    let padded_length = dims.padded_length();
    let mut coeffs = Vec::with_capacity(padded_length);
    coeffs.extend(volume.values.iter().map(|v| v / norm_factor));
    coeffs.resize(padded_length, 0.0);
    let meta = EncodingMeta {
        original_dims: dims,
        norm_factor,
        num_qubits: dims.num_qubits(),
        padded_length,
    };
    Ok((coeffs, meta))
}

/// Amplitude encoding: `c_p = v_p / ‖v‖` for `p < M·L·N`, zero beyond.
pub fn amplitude_encode(volume: &Volume) -> Result<(StateVector, EncodingMeta)> {
    let (coeffs, meta) = encode_coefficients(volume)?;
    let amps = coeffs.into_iter().map(|c| Amplitude::new(c, 0.0)).collect();
    Ok((StateVector::from_parts_unchecked(meta.num_qubits, amps), meta))
}

/// Real parts of an encoded state. Fails if any amplitude carries an
/// imaginary component larger than `1e-12`.
pub fn real_coefficients(state: &StateVector) -> Result<Vec<f64>> {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(p, a)| {
            if a.im.abs() > 1e-12 {
                Err(Error::domain(format!("amplitude {p} is not real")))
            } else {
                Ok(a.re)
            }
        })
        .collect()
}

/// Undoes [`amplitude_encode`]: rescales by the norm factor and drops the
/// padding.
pub fn decode(state: &StateVector, meta: &EncodingMeta, time: u32) -> Result<Volume> {
    if state.dim() != meta.padded_length {
        return Err(Error::domain(format!(
            "state has {} amplitudes, metadata expects {}",
            state.dim(),
            meta.padded_length
        )));
    }
    let n = meta.original_dims.len();
    let values = real_coefficients(state)?[..n]
        .iter()
        .map(|c| (c * meta.norm_factor).max(0.0))
        .collect();
    Volume::new(meta.original_dims, values, time)
}
