//! Report builders behind the `qedge` binary. Each function takes parsed
//! inputs and returns the text that the binary prints, so reports can be
//! checked without spawning a process.
//!
//! Floating-point values are printed with 17 significant digits
//! (`{:.16e}`), which round-trips every `f64`.

use serde::Serialize;
use serde_json::value::RawValue;

use crate::aggregate::{
    aggregate_average, aggregate_mode, process_series, Execution, ModePreference, TimeSeries,
};
use crate::circuit::ghz_state;
use crate::classical::{cost, fit_linear, RegressionModel, TrainingSet};
use crate::encoding::Volume;
use crate::error::{Error, Result};
use crate::oracle::{parallel_evaluate, BooleanFunction, MAX_PARALLEL_QUBITS};
use crate::qhed::{boundary_mask, BoundaryMask, EdgeVector, DEFAULT_EPSILON};
use crate::state::{basis_label, StateVector};

/// Amplitudes at or below this magnitude are left out of state listings.
pub const DISPLAY_TOL: f64 = 1e-12;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::Parse { .. } | Error::Resource(_) | Error::Io(_) => EXIT_USAGE,
        Error::Degenerate(_) | Error::Convergence(_) => EXIT_DEGENERATE,
        Error::Invariant(_) => EXIT_INTERNAL,
    }
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    #[default]
    None,
    Average,
    ModeMost,
    ModeLeast,
}

impl Aggregation {
    pub fn name(self) -> &'static str {
        match self {
            Aggregation::None => "none",
            Aggregation::Average => "average",
            Aggregation::ModeMost => "mode-most",
            Aggregation::ModeLeast => "mode-least",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Options for the `edges` command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub epsilon: f64,
    pub drop_wraparound: bool,
    pub aggregation: Aggregation,
    pub rescale_by_norm: bool,
    pub output_format: OutputFormat,
    pub execution: Execution,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            drop_wraparound: true,
            aggregation: Aggregation::None,
            rescale_by_norm: false,
            output_format: OutputFormat::Json,
            execution: Execution::Parallel,
        }
    }
}

fn state_listing(state: &StateVector) -> String {
    let mut out = String::new();
    for k in state.support(DISPLAY_TOL) {
        let a = state.amplitude(k);
        out.push_str(&format!(
            "{} {} {}\n",
            basis_label(k, state.num_qubits()),
            fmt_f64(a.re),
            fmt_f64(a.im)
        ));
    }
    out
}

/// Non-zero amplitudes of the `n`-qubit GHZ state, one `label re im` line
/// each.
pub fn ghz_report(n: usize) -> Result<String> {
    if !(2..=MAX_PARALLEL_QUBITS).contains(&n) {
        return Err(Error::domain(format!(
            "qubit count must be in 2..={MAX_PARALLEL_QUBITS}, got {n}"
        )));
    }
    Ok(state_listing(&ghz_state(n)?))
}

/// Non-zero amplitudes of `2^{-m/2} Σ_x |x, f(x)⟩` for a truth-table file.
pub fn oracle_report(truth_table: &str) -> Result<String> {
    let f: BooleanFunction = truth_table.parse()?;
    Ok(state_listing(&parallel_evaluate(&f)?))
}

/// Fitted parameters and final cost.
pub fn fit_report(data: &TrainingSet, learning_rate: f64, iterations: usize) -> Result<String> {
    let model: RegressionModel = fit_linear(data, learning_rate, iterations)?;
    let mut out = String::new();
    for (i, t) in model.theta().iter().enumerate() {
        out.push_str(&format!("theta_{i} {}\n", fmt_f64(*t)));
    }
    out.push_str(&format!("cost {}\n", fmt_f64(cost(&model, data)?)));
    Ok(out)
}

struct Num(f64);

impl Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(fmt_f64(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

#[derive(Serialize)]
struct FrameReport {
    time: u32,
    norm_factor: Num,
    edges: Vec<Num>,
    mask: Vec<bool>,
    boundaries: Vec<usize>,
}

#[derive(Serialize)]
struct AggregateReport {
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mask: Option<Vec<bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundaries: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct MetaReport {
    dims: [usize; 3],
    num_qubits: usize,
    padded_length: usize,
    epsilon: Num,
    drop_wraparound: bool,
    rescale_by_norm: bool,
    frame_count: usize,
}

#[derive(Serialize)]
struct EdgesReport {
    frames: Vec<FrameReport>,
    aggregate: AggregateReport,
    meta: MetaReport,
}

struct Aggregate {
    values: Option<Vec<f64>>,
    mask: Option<BoundaryMask>,
}

/// Runs the edge pipeline over `volumes` (any order; sorted by time stamp)
/// and renders the configured report.
pub fn edges_report(mut volumes: Vec<Volume>, cfg: &RunConfig) -> Result<String> {
    if cfg.epsilon.is_nan() || cfg.epsilon < 0.0 {
        return Err(Error::domain(format!("epsilon must be >= 0, got {}", cfg.epsilon)));
    }
    volumes.sort_by_key(|v| v.time());
    let series = TimeSeries::new(volumes)?;
    let out = process_series(&series, cfg.epsilon, cfg.drop_wraparound, cfg.execution)?;
    for e in &out.entries {
        check_telescoping(e)?;
    }

    let entries: Vec<EdgeVector> = if cfg.rescale_by_norm {
        out.rescaled_by_norm()
    } else {
        out.entries.clone()
    };
    let agg = match cfg.aggregation {
        Aggregation::None => Aggregate { values: None, mask: None },
        Aggregation::Average => {
            let values = aggregate_average(&entries)?;
            let template = EdgeVector {
                coefficients: values.clone(),
                ..entries[0].clone()
            };
            let mask = boundary_mask(&template, cfg.epsilon, cfg.drop_wraparound)?;
            Aggregate { values: Some(values), mask: Some(mask) }
        }
        Aggregation::ModeMost | Aggregation::ModeLeast => {
            let prefer = if cfg.aggregation == Aggregation::ModeMost {
                ModePreference::Most
            } else {
                ModePreference::Least
            };
            Aggregate { values: None, mask: Some(aggregate_mode(&out.masks, prefer)?) }
        }
    };

    match cfg.output_format {
        OutputFormat::Json => render_json(&series, &entries, &out.masks, &agg, cfg),
        OutputFormat::Csv => Ok(render_csv(&entries, &out.masks, &agg, cfg)),
    }
}

fn check_telescoping(e: &EdgeVector) -> Result<()> {
    let total: f64 = e.coefficients.iter().sum::<f64>() * std::f64::consts::SQRT_2;
    if total.abs() > 1e-9 {
        return Err(Error::Invariant(format!(
            "edge coefficients of frame {} sum to {total:e}",
            e.frame_time
        )));
    }
    Ok(())
}

fn render_json(
    series: &TimeSeries,
    entries: &[EdgeVector],
    masks: &[BoundaryMask],
    agg: &Aggregate,
    cfg: &RunConfig,
) -> Result<String> {
    let frames = entries
        .iter()
        .zip(masks)
        .map(|(e, m)| FrameReport {
            time: e.frame_time,
            norm_factor: Num(e.meta.norm_factor),
            edges: nums(&e.coefficients),
            mask: m.bits.clone(),
            boundaries: m.positions(),
        })
        .collect();
    let dims = series.dims();
    let meta = entries[0].meta;
    let report = EdgesReport {
        frames,
        aggregate: AggregateReport {
            method: cfg.aggregation.name(),
            values: agg.values.as_deref().map(nums),
            mask: agg.mask.as_ref().map(|m| m.bits.clone()),
            boundaries: agg.mask.as_ref().map(|m| m.positions()),
        },
        meta: MetaReport {
            dims: [dims.rows, dims.cols, dims.slices],
            num_qubits: meta.num_qubits,
            padded_length: meta.padded_length,
            epsilon: Num(cfg.epsilon),
            drop_wraparound: cfg.drop_wraparound,
            rescale_by_norm: cfg.rescale_by_norm,
            frame_count: series.len(),
        },
    };
    let mut s = serde_json::to_string_pretty(&report).map_err(|e| Error::Invariant(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Columns: `section,time,position,value,mask`. Aggregate rows leave
/// `time` empty and `value` empty for mode aggregation.
fn render_csv(entries: &[EdgeVector], masks: &[BoundaryMask], agg: &Aggregate, cfg: &RunConfig) -> String {
    let mut out = String::from("section,time,position,value,mask\n");
    for (e, m) in entries.iter().zip(masks) {
        for (j, (c, b)) in e.coefficients.iter().zip(&m.bits).enumerate() {
            out.push_str(&format!("frame,{},{j},{},{}\n", e.frame_time, fmt_f64(*c), u8::from(*b)));
        }
    }
    if cfg.aggregation != Aggregation::None {
        let len = entries[0].len();
        for j in 0..len {
            let value = agg.values.as_ref().map(|v| fmt_f64(v[j])).unwrap_or_default();
            let bit = agg.mask.as_ref().map(|m| u8::from(m.bits[j]).to_string()).unwrap_or_default();
            out.push_str(&format!("{},,{j},{value},{bit}\n", cfg.aggregation.name()));
        }
    }
    out
}
