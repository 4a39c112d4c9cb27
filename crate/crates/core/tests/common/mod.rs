//! Reference computations shared by the integration suites. Nothing here
//! calls into the code paths it is used to check.

#![allow(dead_code)]

use num_complex::Complex64;
use qedge::{Dims, TrainingSet, Volume};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random dims with `M·L·N <= max_len`, often not powers of two.
pub fn random_dims(rng: &mut impl Rng, max_len: usize) -> Dims {
    loop {
        let m = rng.gen_range(1..=32);
        let l = rng.gen_range(1..=32);
        let n = rng.gen_range(1..=8);
        if m * l * n <= max_len && m * l * n >= 2 {
            return Dims::new(m, l, n).unwrap();
        }
    }
}

pub fn random_volume(rng: &mut impl Rng, dims: Dims, time: u32) -> Volume {
    loop {
        let values: Vec<f64> = (0..dims.len()).map(|_| rng.gen_range(0.0..255.0)).collect();
        if values.iter().any(|&v| v > 0.0) {
            return Volume::new(dims, values, time).unwrap();
        }
    }
}

pub fn random_unit_complex(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / n).collect()
}

/// Flat order written out as nested loops over the 1-based grid indices.
pub fn flatten_by_loops(v: &Volume) -> Vec<f64> {
    let d = v.dims();
    let mut out = Vec::with_capacity(d.len());
    for k in 1..=d.slices {
        for j in 1..=d.cols {
            for i in 1..=d.rows {
                out.push(v.get(i - 1, j - 1, k - 1));
            }
        }
    }
    out
}

/// Dense complex matrix product of row-major square matrices.
pub fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            out[r * dim + c] = (0..dim).map(|k| a[r * dim + k] * b[k * dim + c]).sum();
        }
    }
    out
}

pub fn matvec(a: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let dim = v.len();
    (0..dim)
        .map(|r| (0..dim).map(|k| a[r * dim + k] * v[k]).sum())
        .collect()
}

/// Solves the normal equations `XᵀX θ = Xᵀy` (with a bias column) by
/// Gaussian elimination with partial pivoting.
pub fn least_squares(data: &TrainingSet) -> Vec<f64> {
    let w = data.num_features() + 1;
    let mut a = vec![vec![0.0; w + 1]; w];
    for (x, y) in data.features().iter().zip(data.targets()) {
        let row: Vec<f64> = std::iter::once(1.0).chain(x.iter().copied()).collect();
        for i in 0..w {
            for j in 0..w {
                a[i][j] += row[i] * row[j];
            }
            a[i][w] += row[i] * y;
        }
    }
    for col in 0..w {
        let piv = (col..w)
            .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
            .unwrap();
        a.swap(col, piv);
        for r in 0..w {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=w {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    (0..w).map(|i| a[i][w] / a[i][i]).collect()
}

/// `(1/2m) Σ r²` evaluated independently of the library.
pub fn reference_cost(theta: &[f64], data: &TrainingSet) -> f64 {
    let m = data.len() as f64;
    data.features()
        .iter()
        .zip(data.targets())
        .map(|(x, y)| {
            let h = theta[0] + theta[1..].iter().zip(x).map(|(t, v)| t * v).sum::<f64>();
            (h - y).powi(2)
        })
        .sum::<f64>()
        / (2.0 * m)
}

/// Central finite differences of [`reference_cost`].
pub fn fd_gradient(theta: &[f64], data: &TrainingSet, step: f64) -> Vec<f64> {
    (0..theta.len())
        .map(|i| {
            let mut up = theta.to_vec();
            let mut dn = theta.to_vec();
            up[i] += step;
            dn[i] -= step;
            (reference_cost(&up, data) - reference_cost(&dn, data)) / (2.0 * step)
        })
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
