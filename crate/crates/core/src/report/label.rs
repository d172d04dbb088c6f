use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::number::round_half_up;
use crate::ingredients::{Ingredient, IngredientVector};
use crate::scoring::{dq_score, effective_weights, WeightVector};
use crate::{Error, Result};

/// Version tag written into every label.
pub const METRIC_VERSION: &str = "dq-metric/1.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelEntry {
    pub ingredient: Ingredient,
    /// Nominal weight from the active weight vector.
    pub weight: f64,
    /// Weight after renormalizing over the assessed ingredients.
    pub effective_weight: Option<f64>,
    pub score: Option<f64>,
    /// `effective_weight * score / 100`.
    pub contribution: Option<f64>,
    pub assessed: bool,
}

/// Nutrition-style summary: one entry per ingredient in canonical order and
/// the resulting DQ score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QualityLabel {
    pub version: String,
    pub entries: Vec<LabelEntry>,
    pub total: f64,
    /// True when some ingredients were not assessed and weights were
    /// rescaled over the rest.
    pub renormalized: bool,
}

impl QualityLabel {
    pub fn new(ingredients: &IngredientVector, weights: &WeightVector) -> Result<Self> {
        let effective = effective_weights(ingredients, weights)?;
        let entries: Vec<LabelEntry> = Ingredient::ALL
            .into_iter()
            .map(|ingredient| {
                let score = ingredients.get(ingredient);
                let effective_weight = effective[ingredient.index()];
                LabelEntry {
                    ingredient,
                    weight: weights.get(ingredient),
                    effective_weight,
                    score,
                    contribution: effective_weight.zip(score).map(|(w, s)| w * s / 100.0),
                    assessed: score.is_some(),
                }
            })
            .collect();
        Ok(QualityLabel {
            version: METRIC_VERSION.to_string(),
            total: dq_score(ingredients, weights)?,
            renormalized: entries.iter().any(|e| !e.assessed),
            entries,
        })
    }

    pub fn entry(&self, ingredient: Ingredient) -> Option<&LabelEntry> {
        self.entries.iter().find(|e| e.ingredient == ingredient)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("label serializes")
    }

    /// Accepts a label document, or a full report with a `label` field.
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_slice(bytes).map_err(|e| Error::schema("label", e.to_string()))?;
        let value = match value.get("label") {
            Some(inner) if value.get("entries").is_none() => inner.clone(),
            _ => value,
        };
        let label: QualityLabel = serde_json::from_value(value).map_err(|e| Error::schema("label", e.to_string()))?;
        label.validate()?;
        Ok(label)
    }

    fn validate(&self) -> Result<()> {
        let order: Vec<Ingredient> = self.entries.iter().map(|e| e.ingredient).collect();
        if order != Ingredient::ALL {
            return Err(Error::schema(
                "entries",
                "expected the nine ingredients in canonical order",
            ));
        }
        let sum: f64 = self.entries.iter().filter_map(|e| e.contribution).sum();
        if (sum - self.total).abs() > 1e-6 {
            return Err(Error::Validation(format!(
                "contributions sum to {sum} but total is {}",
                self.total
            )));
        }
        Ok(())
    }

    /// Fixed-width table in canonical ingredient order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let rule = "-".repeat(62);
        let _ = writeln!(out, "DATA QUALITY LABEL ({})", self.version);
        let _ = writeln!(out, "{rule}");
        let _ = writeln!(
            out,
            "{:<26}{:>10}{:>12}{:>14}",
            "Ingredient", "Weight %", "Score", "Contribution"
        );
        let _ = writeln!(out, "{rule}");
        for e in &self.entries {
            let score = e.score.map_or_else(|| "n/a".to_string(), |s| round_half_up(s, 2));
            let contribution = e.contribution.map_or_else(|| "-".to_string(), |c| round_half_up(c, 2));
            let _ = writeln!(
                out,
                "{:<26}{:>10}{:>12}{:>14}",
                e.ingredient.label(),
                round_half_up(e.weight, 2),
                score,
                contribution
            );
        }
        let _ = writeln!(out, "{rule}");
        let _ = writeln!(out, "{:<26}{:>36}", "DQ SCORE", round_half_up(self.total, 2));
        if self.renormalized {
            let assessed = self.entries.iter().filter(|e| e.assessed).count();
            let _ = writeln!(out, "Weights renormalized over the {assessed} assessed ingredients.");
        }
        out
    }
}
