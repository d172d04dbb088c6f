use serde::{Deserialize, Serialize};

use crate::ingredients::Ingredient;
use crate::{Error, Result};

/// First-component loadings of the published metric, in canonical order.
pub const DEFAULT_LOADINGS: [f64; 9] = [0.066, 0.867, 0.87, -0.059, -0.205, 0.108, 0.702, -0.085, -0.278];

const WEIGHT_SUM_TOLERANCE: f64 = 1e-6;

/// Shifts each loading by +1 and rescales so the results sum to 100.
pub fn loadings_to_weights(loadings: &[f64]) -> Result<Vec<f64>> {
    if let Some(l) = loadings.iter().find(|l| !(-1.0..=1.0).contains(*l)) {
        return Err(Error::Domain(format!("loading {l} outside [-1, 1]")));
    }
    let shifted: Vec<f64> = loadings.iter().map(|l| l + 1.0).collect();
    let total: f64 = shifted.iter().sum();
    if total <= 0.0 {
        return Err(Error::Domain("every loading is -1; weights are undefined".to_string()));
    }
    Ok(shifted.iter().map(|s| 100.0 * s / total).collect())
}

/// Per-ingredient principal-component loadings, each in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 9]", into = "[f64; 9]")]
pub struct LoadingsVector([f64; 9]);

impl LoadingsVector {
    pub fn new(loadings: [f64; 9]) -> Result<Self> {
        if let Some(l) = loadings.iter().find(|l| !(-1.0..=1.0).contains(*l)) {
            return Err(Error::Domain(format!("loading {l} outside [-1, 1]")));
        }
        Ok(LoadingsVector(loadings))
    }

    pub fn published() -> Self {
        LoadingsVector(DEFAULT_LOADINGS)
    }

    pub fn values(&self) -> &[f64; 9] {
        &self.0
    }

    pub fn get(&self, ingredient: Ingredient) -> f64 {
        self.0[ingredient.index()]
    }

    /// Sum of the loadings after the +1 shift.
    pub fn shifted_sum(&self) -> f64 {
        self.0.iter().map(|l| l + 1.0).sum()
    }

    pub fn to_weights(&self) -> Result<WeightVector> {
        let w = loadings_to_weights(&self.0)?;
        WeightVector::new(w.try_into().expect("nine weights"))
    }
}

impl TryFrom<[f64; 9]> for LoadingsVector {
    type Error = Error;

    fn try_from(value: [f64; 9]) -> Result<Self> {
        LoadingsVector::new(value)
    }
}

impl From<LoadingsVector> for [f64; 9] {
    fn from(value: LoadingsVector) -> Self {
        value.0
    }
}

/// Weights-file record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub ingredient: Ingredient,
    pub weight: f64,
}

/// Non-negative ingredient percentages summing to 100.
///
/// Serializes as the weights-file format: an array of
/// `{"ingredient": id, "weight": percent}` in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<WeightEntry>", into = "Vec<WeightEntry>")]
pub struct WeightVector([f64; 9]);

impl WeightVector {
    pub fn new(weights: [f64; 9]) -> Result<Self> {
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Validation(format!(
                "weight for {} must be a non-negative number, got {w}",
                Ingredient::ALL[i]
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 100.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::Validation(format!("weights sum to {sum}, expected 100")));
        }
        Ok(WeightVector(weights))
    }

    /// The published weights derived from [`DEFAULT_LOADINGS`].
    pub fn published() -> Self {
        LoadingsVector::published()
            .to_weights()
            .expect("published loadings are valid")
    }

    pub fn values(&self) -> &[f64; 9] {
        &self.0
    }

    pub fn get(&self, ingredient: Ingredient) -> f64 {
        self.0[ingredient.index()]
    }

    pub fn entries(&self) -> Vec<WeightEntry> {
        Ingredient::ALL
            .into_iter()
            .map(|ingredient| WeightEntry {
                ingredient,
                weight: self.get(ingredient),
            })
            .collect()
    }

    /// Parses a weights file.
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let entries: Vec<WeightEntry> =
            serde_json::from_slice(bytes).map_err(|e| Error::schema("weights", e.to_string()))?;
        WeightVector::try_from(entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("weights serialize")
    }
}

impl Default for WeightVector {
    fn default() -> Self {
        WeightVector::published()
    }
}

impl TryFrom<Vec<WeightEntry>> for WeightVector {
    type Error = Error;

    fn try_from(entries: Vec<WeightEntry>) -> Result<Self> {
        if entries.len() != 9 {
            return Err(Error::schema(
                "weights",
                format!("expected 9 entries, found {}", entries.len()),
            ));
        }
        let mut weights = [0.0; 9];
        for (position, (entry, expected)) in entries.iter().zip(Ingredient::ALL).enumerate() {
            if entry.ingredient != expected {
                return Err(Error::schema(
                    "ingredient",
                    format!("entry {position} is {}, expected {expected}", entry.ingredient),
                ));
            }
            weights[position] = entry.weight;
        }
        WeightVector::new(weights)
    }
}

impl From<WeightVector> for Vec<WeightEntry> {
    fn from(value: WeightVector) -> Self {
        value.entries()
    }
}
