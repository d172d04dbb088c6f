use serde::{Deserialize, Serialize};

use super::{Ingredient, IngredientConfig};
use crate::tabular::{column_stats, Dataset, ReferenceColumn, ReferenceStats, StatsSummary};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatParameter {
    Mean,
    Median,
    Mode,
    StdDev,
    Min,
    Max,
    Count,
}

impl StatParameter {
    pub const ALL: [StatParameter; 7] = [
        StatParameter::Mean,
        StatParameter::Median,
        StatParameter::Mode,
        StatParameter::StdDev,
        StatParameter::Min,
        StatParameter::Max,
        StatParameter::Count,
    ];

    fn reference(self, r: &ReferenceColumn) -> Option<f64> {
        match self {
            StatParameter::Mean => r.mean,
            StatParameter::Median => r.median,
            StatParameter::Mode => r.mode,
            StatParameter::StdDev => r.std_dev,
            StatParameter::Min => r.min,
            StatParameter::Max => r.max,
            StatParameter::Count => r.count.map(|c| c as f64),
        }
    }

    fn computed(self, s: &StatsSummary) -> f64 {
        match self {
            StatParameter::Mean => s.mean,
            StatParameter::Median => s.median,
            StatParameter::Mode => s.mode,
            StatParameter::StdDev => s.std_dev,
            StatParameter::Min => s.min,
            StatParameter::Max => s.max,
            StatParameter::Count => s.count as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicMismatch {
    pub column: String,
    pub parameter: StatParameter,
    pub reference: f64,
    pub computed: Option<f64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicsDetail {
    pub comparisons: usize,
    pub matches: usize,
    pub mismatches: Vec<CharacteristicMismatch>,
    /// Reference columns with no counterpart in the dataset.
    pub unmatched_columns: Vec<String>,
}

/// Share of reference statistics reproduced by the dataset.
pub fn characteristics_score(
    dataset: &Dataset,
    reference: &ReferenceStats,
    config: &IngredientConfig,
) -> Result<(f64, CharacteristicsDetail)> {
    let mut detail = CharacteristicsDetail {
        comparisons: 0,
        matches: 0,
        mismatches: Vec::new(),
        unmatched_columns: Vec::new(),
    };
    for (name, expected) in &reference.columns {
        let column = dataset.column_by_name(name);
        if column.is_none() {
            detail.unmatched_columns.push(name.clone());
        }
        let stats = column.map(column_stats);
        for parameter in StatParameter::ALL {
            let Some(reference_value) = parameter.reference(expected) else {
                continue;
            };
            detail.comparisons += 1;
            let (computed, reason) = match (&stats, column) {
                (None, _) => (None, Some("column absent from dataset".to_string())),
                (Some(Ok(s)), _) => (Some(parameter.computed(s)), None),
                (Some(Err(_)), Some(c)) if parameter == StatParameter::Count => {
                    (Some(c.non_missing_count() as f64), None)
                }
                (Some(Err(_)), _) => (None, Some("column has no numeric cells".to_string())),
            };
            let matched = computed.is_some_and(|value| {
                if parameter == StatParameter::Count {
                    value == reference_value
                } else {
                    let tolerance = config.characteristics_tolerance * reference_value.abs().max(1.0);
                    (value - reference_value).abs() <= tolerance
                }
            });
            if matched {
                detail.matches += 1;
            } else {
                detail.mismatches.push(CharacteristicMismatch {
                    column: name.clone(),
                    parameter,
                    reference: reference_value,
                    computed,
                    reason: reason.unwrap_or_else(|| "value differs from reference".to_string()),
                });
            }
        }
    }
    if detail.comparisons == 0 {
        return Err(Error::NotAssessed {
            ingredient: Ingredient::DatasetCharacteristics,
            reason: "reference statistics are empty".to_string(),
        });
    }
    let score = 100.0 * detail.matches as f64 / detail.comparisons as f64;
    Ok((score, detail))
}
