use serde::{Deserialize, Serialize};

use super::weights::{LoadingsVector, WeightVector};
use crate::ingredients::{Ingredient, IngredientVector};
use crate::{Error, Result};

/// Relative eigenvalue change below which power iteration stops.
pub const POWER_TOLERANCE: f64 = 1e-12;
pub const POWER_MAX_ITERATIONS: usize = 10_000;

/// Ingredient scores of several datasets, one row per dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 9]>", into = "Vec<[f64; 9]>")]
pub struct TrainingMatrix {
    rows: Vec<[f64; 9]>,
}

impl TrainingMatrix {
    pub fn new(rows: Vec<[f64; 9]>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Degenerate(format!(
                "training matrix needs at least 2 rows, found {}",
                rows.len()
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            if let Some((c, v)) = row.iter().enumerate().find(|(_, v)| !(0.0..=100.0).contains(*v)) {
                return Err(Error::Validation(format!(
                    "row {} {}: score {v} outside [0, 100]",
                    r + 1,
                    Ingredient::ALL[c]
                )));
            }
        }
        Ok(TrainingMatrix { rows })
    }

    /// Builds a matrix from fully assessed ingredient vectors.
    pub fn from_vectors(vectors: &[IngredientVector]) -> Result<Self> {
        let rows = vectors
            .iter()
            .enumerate()
            .map(|(r, v)| {
                let mut row = [0.0; 9];
                for (slot, (ingredient, score)) in row.iter_mut().zip(v.iter()) {
                    *slot =
                        score.ok_or_else(|| Error::Validation(format!("row {}: {ingredient} not assessed", r + 1)))?;
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        TrainingMatrix::new(rows)
    }

    /// Parses CSV whose header names the nine ingredients in any order. An
    /// optional `dataset` column labels rows and is ignored.
    pub fn from_csv(bytes: &[u8]) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
        let headers = reader
            .headers()
            .map_err(|e| Error::Csv {
                row: 0,
                message: e.to_string(),
            })?
            .clone();
        let mut positions = [usize::MAX; 9];
        for (c, name) in headers.iter().enumerate() {
            if name == "dataset" {
                continue;
            }
            let ingredient: Ingredient = name.parse()?;
            if positions[ingredient.index()] != usize::MAX {
                return Err(Error::DuplicateColumn(name.to_string()));
            }
            positions[ingredient.index()] = c;
        }
        if let Some(i) = positions.iter().position(|p| *p == usize::MAX) {
            return Err(Error::schema(
                Ingredient::ALL[i].id(),
                "column missing from training matrix",
            ));
        }
        let mut rows = Vec::new();
        for (r, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Csv {
                row: r + 1,
                message: e.to_string(),
            })?;
            let mut row = [0.0; 9];
            for (slot, &c) in row.iter_mut().zip(&positions) {
                let cell = record.get(c).unwrap_or("");
                *slot = crate::tabular::parse_number(cell).ok_or_else(|| Error::Csv {
                    row: r + 1,
                    message: format!("{:?} is not a number", cell),
                })?;
            }
            rows.push(row);
        }
        TrainingMatrix::new(rows)
    }

    pub fn rows(&self) -> &[[f64; 9]] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

impl TryFrom<Vec<[f64; 9]>> for TrainingMatrix {
    type Error = Error;

    fn try_from(rows: Vec<[f64; 9]>) -> Result<Self> {
        TrainingMatrix::new(rows)
    }
}

impl From<TrainingMatrix> for Vec<[f64; 9]> {
    fn from(value: TrainingMatrix) -> Self {
        value.rows
    }
}

/// Z-scores each column (population standard deviation). Constant columns
/// become all zeros and are reported as `false` in the mask.
fn standardize(rows: &[[f64; 9]]) -> (Vec<[f64; 9]>, [bool; 9]) {
    let n = rows.len() as f64;
    let mut varying = [false; 9];
    let mut out = vec![[0.0; 9]; rows.len()];
    for c in 0..9 {
        let first = rows[0][c];
        if rows.iter().all(|r| r[c] == first) {
            continue;
        }
        let mean = rows.iter().map(|r| r[c]).sum::<f64>() / n;
        let sd = (rows.iter().map(|r| (r[c] - mean).powi(2)).sum::<f64>() / n).sqrt();
        varying[c] = true;
        for (o, r) in out.iter_mut().zip(rows) {
            o[c] = (r[c] - mean) / sd;
        }
    }
    (out, varying)
}

fn covariance(z: &[[f64; 9]]) -> [[f64; 9]; 9] {
    let denom = (z.len() - 1) as f64;
    let mut cov = [[0.0; 9]; 9];
    for i in 0..9 {
        for j in i..9 {
            let s = z.iter().map(|r| r[i] * r[j]).sum::<f64>() / denom;
            cov[i][j] = s;
            cov[j][i] = s;
        }
    }
    cov
}

fn mat_vec(m: &[[f64; 9]; 9], v: &[f64; 9]) -> [f64; 9] {
    std::array::from_fn(|i| m[i].iter().zip(v).map(|(a, b)| a * b).sum())
}

fn norm(v: &[f64; 9]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Dominant unit eigenvector of a symmetric positive semi-definite matrix by
/// power iteration, restricted to the `active` coordinates.
fn power_iteration(m: &[[f64; 9]; 9], active: &[bool; 9]) -> Result<([f64; 9], f64)> {
    // Unequal start weights so that no eigenvector with entries of equal
    // magnitude is orthogonal to the start.
    let mut v: [f64; 9] = std::array::from_fn(|i| {
        if active[i] {
            1.0 + ((i + 1) as f64).sqrt() / 10.0
        } else {
            0.0
        }
    });
    let n0 = norm(&v);
    if n0 == 0.0 {
        return Err(Error::Degenerate("no varying columns".to_string()));
    }
    v.iter_mut().for_each(|x| *x /= n0);
    let mut lambda = 0.0;
    for iteration in 1..=POWER_MAX_ITERATIONS {
        let w = mat_vec(m, &v);
        let next_lambda = v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
        let residual = norm(&std::array::from_fn(|i| w[i] - next_lambda * v[i]));
        let wn = norm(&w);
        if wn == 0.0 {
            return Err(Error::Degenerate("covariance matrix is zero".to_string()));
        }
        let converged = iteration > 1
            && (next_lambda - lambda).abs() <= POWER_TOLERANCE * next_lambda.abs()
            && residual <= POWER_TOLERANCE * next_lambda.abs();
        lambda = next_lambda;
        if converged {
            return Ok((v, lambda));
        }
        v = std::array::from_fn(|i| w[i] / wn);
    }
    Err(Error::NotConverged(POWER_MAX_ITERATIONS))
}

/// Flips the sign so the loadings sum is non-negative, or, when the sum is
/// zero, so the first nonzero loading is positive.
fn orient(mut v: [f64; 9]) -> [f64; 9] {
    let sum: f64 = v.iter().sum();
    let scale = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let flip = if sum.abs() > 1e-12 * scale {
        sum < 0.0
    } else {
        v.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0)
    };
    if flip {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// First principal component of the standardized training matrix, returned
/// as a unit-length loadings vector and its eigenvalue.
pub fn first_principal_component(training: &TrainingMatrix) -> Result<(LoadingsVector, f64)> {
    let (z, varying) = standardize(training.rows());
    if !varying.iter().any(|v| *v) {
        return Err(Error::Degenerate("every training column has zero variance".to_string()));
    }
    let cov = covariance(&z);
    let (v, lambda) = power_iteration(&cov, &varying)?;
    let v = orient(v).map(|x| x.clamp(-1.0, 1.0));
    Ok((LoadingsVector::new(v)?, lambda))
}

/// Derives a weight vector from training data: PC1 loadings shifted and
/// normalized to percentages.
pub fn refit_weights(training: &TrainingMatrix) -> Result<(WeightVector, LoadingsVector)> {
    let (loadings, _) = first_principal_component(training)?;
    Ok((loadings.to_weights()?, loadings))
}
