//! Linear hypothesis, halved mean-squared cost, batch gradient descent, and
//! the direct cyclic-difference loop used as ground truth for the edge
//! detector.

use std::f64::consts::SQRT_2;
use std::io::Read;

use crate::error::{Error, Result};

/// Consecutive cost increases after which descent is declared divergent.
const DIVERGENCE_STREAK: usize = 10;

/// Parameters `(θ_0, θ_1, …, θ_n)` with the bias first.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionModel {
    theta: Vec<f64>,
}

impl RegressionModel {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::domain("model needs at least a bias term"));
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::domain("parameters must be finite"));
        }
        Ok(Self { theta })
    }

    pub fn zeros(num_features: usize) -> Self {
        Self {
            theta: vec![0.0; num_features + 1],
        }
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn num_features(&self) -> usize {
        self.theta.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    features: Vec<Vec<f64>>,
    targets: Vec<f64>,
}

impl TrainingSet {
    pub fn new(features: Vec<Vec<f64>>, targets: Vec<f64>) -> Result<Self> {
        if features.is_empty() || features.len() != targets.len() {
            return Err(Error::domain(format!(
                "{} feature rows and {} targets; need matching non-zero counts",
                features.len(),
                targets.len()
            )));
        }
        let width = features[0].len();
        if features.iter().any(|r| r.len() != width) {
            return Err(Error::domain("feature rows have different widths"));
        }
        if features.iter().flatten().chain(&targets).any(|v| !v.is_finite()) {
            return Err(Error::domain("training data must be finite"));
        }
        Ok(Self { features, targets })
    }

    /// CSV without a header: one sample per row, features then the target in
    /// the last column.
    pub fn from_csv(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut features = Vec::new();
        let mut targets = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                Error::parse(line, e.to_string())
            })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            if rec.iter().all(|f| f.is_empty()) {
                continue;
            }
            let row = rec
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| Error::parse(line, format!("invalid number '{f}'")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if let Some(w) = features.first().map(|r: &Vec<f64>| r.len() + 1) {
                if row.len() != w {
                    return Err(Error::parse(line, format!("expected {w} columns, found {}", row.len())));
                }
            }
            let (target, x) = row.split_last().expect("csv records are never empty");
            targets.push(*target);
            features.push(x.to_vec());
        }
        if targets.is_empty() {
            return Err(Error::parse(1, "no samples"));
        }
        TrainingSet::new(features, targets)
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn num_features(&self) -> usize {
        self.features[0].len()
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    fn check_model(&self, model: &RegressionModel) -> Result<()> {
        if model.num_features() != self.num_features() {
            return Err(Error::domain(format!(
                "model has {} features, data has {}",
                model.num_features(),
                self.num_features()
            )));
        }
        Ok(())
    }
}

/// `θ_0 + Σ θ_i x_i`.
pub fn hypothesis(model: &RegressionModel, x: &[f64]) -> Result<f64> {
    if x.len() != model.num_features() {
        return Err(Error::domain(format!(
            "expected {} features, got {}",
            model.num_features(),
            x.len()
        )));
    }
    Ok(predict(&model.theta, x))
}

fn predict(theta: &[f64], x: &[f64]) -> f64 {
    theta[0] + theta[1..].iter().zip(x).map(|(t, v)| t * v).sum::<f64>()
}

/// `(1/2m) Σ (h(x_i) - y_i)²`.
pub fn cost(model: &RegressionModel, data: &TrainingSet) -> Result<f64> {
    data.check_model(model)?;
    Ok(cost_unchecked(&model.theta, data))
}

fn cost_unchecked(theta: &[f64], data: &TrainingSet) -> f64 {
    let sq: f64 = data
        .features
        .iter()
        .zip(&data.targets)
        .map(|(x, y)| {
            let r = predict(theta, x) - y;
            r * r
        })
        .sum();
    sq / (2.0 * data.len() as f64)
}

/// `∂cost/∂θ`: `(1/m) Σ r_i` for the bias and `(1/m) Σ r_i x_ij` otherwise.
pub fn gradient(model: &RegressionModel, data: &TrainingSet) -> Result<Vec<f64>> {
    data.check_model(model)?;
    Ok(gradient_unchecked(&model.theta, data))
}

fn gradient_unchecked(theta: &[f64], data: &TrainingSet) -> Vec<f64> {
    let mut g = vec![0.0; theta.len()];
    for (x, y) in data.features.iter().zip(&data.targets) {
        let r = predict(theta, x) - y;
        g[0] += r;
        for (gi, xi) in g[1..].iter_mut().zip(x) {
            *gi += r * xi;
        }
    }
    let m = data.len() as f64;
    g.iter_mut().for_each(|v| *v /= m);
    g
}

/// Full-batch gradient descent with a fixed step, starting from `θ = 0`.
pub fn fit_linear(data: &TrainingSet, learning_rate: f64, iterations: usize) -> Result<RegressionModel> {
    fit_linear_from(RegressionModel::zeros(data.num_features()), data, learning_rate, iterations)
}

/// As [`fit_linear`] but from a given starting model.
pub fn fit_linear_from(
    initial: RegressionModel,
    data: &TrainingSet,
    learning_rate: f64,
    iterations: usize,
) -> Result<RegressionModel> {
    if !learning_rate.is_finite() || learning_rate <= 0.0 {
        return Err(Error::domain(format!("learning rate must be positive, got {learning_rate}")));
    }
    data.check_model(&initial)?;
    let mut theta = initial.theta;
    let mut prev = cost_unchecked(&theta, data);
    let mut rising = 0;
    for it in 0..iterations {
        let g = gradient_unchecked(&theta, data);
        if g.iter().all(|v| *v == 0.0) {
            break;
        }
        for (t, gi) in theta.iter_mut().zip(&g) {
            *t -= learning_rate * gi;
        }
        let c = cost_unchecked(&theta, data);
        if !c.is_finite() {
            return Err(Error::Convergence(format!("cost became non-finite at iteration {it}")));
        }
        rising = if c > prev { rising + 1 } else { 0 };
        if rising >= DIVERGENCE_STREAK {
            return Err(Error::Convergence(format!(
                "cost rose for {DIVERGENCE_STREAK} consecutive iterations (iteration {it}, cost {c:e})"
            )));
        }
        prev = c;
    }
    Ok(RegressionModel { theta })
}

/// `((c_j - c_{(j+1) mod P})/√2)_j` by direct subtraction.
pub fn classical_edge_oracle(coeffs: &[f64]) -> Result<Vec<f64>> {
    let p = coeffs.len();
    if p < 2 {
        return Err(Error::domain(format!("need at least 2 coefficients, got {p}")));
    }
    let mut out = vec![0.0; p];
    for j in 0..p {
        let next = if j + 1 == p { coeffs[0] } else { coeffs[j + 1] };
        out[j] = (coeffs[j] - next) / SQRT_2;
    }
    Ok(out)
}
