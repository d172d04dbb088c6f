use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::IngredientConfig;
use crate::tabular::{Codebook, Column, Dataset, DeclaredType};
use crate::{Error, Result};

/// Measurement level detected from a column's values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measurement {
    Categorical,
    Continuous,
}

/// Numeric columns with many distinct values are continuous; everything
/// else is categorical.
pub fn detect_measurement(column: &Column, config: &IngredientConfig) -> Measurement {
    if !column.is_numeric() {
        return Measurement::Categorical;
    }
    let values = column.numbers();
    let distinct: HashSet<u64> = values
        .iter()
        .map(|v| if *v == 0.0 { 0.0f64.to_bits() } else { v.to_bits() })
        .collect();
    let non_missing = column.non_missing_count().max(1);
    let ratio = distinct.len() as f64 / non_missing as f64;
    if ratio > config.categorical_distinct_ratio || distinct.len() > config.categorical_distinct_count {
        Measurement::Continuous
    } else {
        Measurement::Categorical
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InconsistentColumn {
    pub column: String,
    pub declared_type: DeclaredType,
    pub detected: Measurement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyDetail {
    pub total_columns: usize,
    pub inconsistent: Vec<InconsistentColumn>,
}

pub fn categorical_consistency_score(
    dataset: &Dataset,
    codebook: &Codebook,
    config: &IngredientConfig,
) -> Result<(f64, ConsistencyDetail)> {
    let total_columns = dataset.column_count();
    if total_columns == 0 {
        return Err(Error::Degenerate("dataset has no columns".to_string()));
    }
    let mut inconsistent = Vec::new();
    for column in dataset.columns() {
        let Some(entry) = codebook.get(column.name()) else {
            continue;
        };
        if column.non_missing_count() == 0 {
            continue;
        }
        let detected = detect_measurement(column, config);
        let clash = matches!(
            (entry.declared_type, detected),
            (DeclaredType::Categorical, Measurement::Continuous) | (DeclaredType::Continuous, Measurement::Categorical)
        );
        if clash {
            inconsistent.push(InconsistentColumn {
                column: column.name().to_string(),
                declared_type: entry.declared_type,
                detected,
            });
        }
    }
    let score = 100.0 * (1.0 - inconsistent.len() as f64 / total_columns as f64);
    Ok((
        score,
        ConsistencyDetail {
            total_columns,
            inconsistent,
        },
    ))
}
