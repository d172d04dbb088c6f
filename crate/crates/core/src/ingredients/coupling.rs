use serde::{Deserialize, Serialize};

use crate::similarity::hybrid_score;
use crate::tabular::{Codebook, Dataset};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnCoupling {
    pub column: String,
    pub description: Option<String>,
    /// Hybrid similarity in `[0, 1]`.
    pub coupling: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingDetail {
    /// Per-column scores, weakest first.
    pub columns: Vec<ColumnCoupling>,
}

pub fn metadata_coupling_score(dataset: &Dataset, codebook: &Codebook) -> Result<(f64, CouplingDetail)> {
    if dataset.column_count() == 0 {
        return Err(Error::Degenerate("dataset has no columns".to_string()));
    }
    let mut columns: Vec<ColumnCoupling> = dataset
        .columns()
        .iter()
        .map(|column| {
            let description = codebook.get(column.name()).map(|e| e.description.clone());
            let coupling = hybrid_score(column.name(), description.as_deref().unwrap_or(""));
            ColumnCoupling {
                column: column.name().to_string(),
                description,
                coupling,
            }
        })
        .collect();
    let score = 100.0 * columns.iter().map(|c| c.coupling).sum::<f64>() / columns.len() as f64;
    columns.sort_by(|a, b| a.coupling.total_cmp(&b.coupling).then_with(|| a.column.cmp(&b.column)));
    Ok((score, CouplingDetail { columns }))
}
