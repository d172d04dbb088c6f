use serde::{Deserialize, Serialize};

use super::Ingredient;
use crate::tabular::{CellKind, Codebook, Dataset, DeclaredType};
use crate::{Error, Result};

/// Whether a non-missing cell of `kind` is acceptable under `declared`.
pub fn kind_compatible(declared: DeclaredType, kind: CellKind) -> bool {
    match declared {
        DeclaredType::Continuous => matches!(kind, CellKind::Integer | CellKind::Real),
        DeclaredType::Date => kind == CellKind::Date,
        DeclaredType::Categorical | DeclaredType::Text => true,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnUniformity {
    pub column: String,
    pub declared_type: DeclaredType,
    pub checked_cells: usize,
    /// Rows whose cell kind contradicts the declared type.
    pub mismatched_rows: Vec<usize>,
    pub mismatch_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformityDetail {
    pub columns: Vec<ColumnUniformity>,
    /// Dataset columns with no codebook entry.
    pub uncovered_columns: Vec<String>,
}

pub fn uniformity_score(dataset: &Dataset, codebook: &Codebook) -> Result<(f64, UniformityDetail)> {
    let mut detail = UniformityDetail {
        columns: Vec::new(),
        uncovered_columns: Vec::new(),
    };
    for column in dataset.columns() {
        let Some(entry) = codebook.get(column.name()) else {
            detail.uncovered_columns.push(column.name().to_string());
            continue;
        };
        let declared = entry.declared_type;
        let mut checked = 0;
        let mut mismatched_rows = Vec::new();
        for (row, &kind) in column.kinds().iter().enumerate() {
            if kind.is_missing() {
                continue;
            }
            checked += 1;
            if !kind_compatible(declared, kind) {
                mismatched_rows.push(row);
            }
        }
        let mismatch_fraction = if checked == 0 {
            0.0
        } else {
            mismatched_rows.len() as f64 / checked as f64
        };
        detail.columns.push(ColumnUniformity {
            column: column.name().to_string(),
            declared_type: declared,
            checked_cells: checked,
            mismatched_rows,
            mismatch_fraction,
        });
    }
    if detail.columns.is_empty() {
        return Err(Error::NotAssessed {
            ingredient: Ingredient::Uniformity,
            reason: "no dataset column is described in the codebook".to_string(),
        });
    }
    let mean = detail.columns.iter().map(|c| c.mismatch_fraction).sum::<f64>() / detail.columns.len() as f64;
    Ok((100.0 * (1.0 - mean), detail))
}
