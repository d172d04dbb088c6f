use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Ingredient, IngredientConfig};
use crate::tabular::{mean, Dataset};
use crate::{Error, Result};

/// Fisher-Pearson moment coefficient `m3 / m2^1.5`; 0 for constant or empty
/// input.
pub fn fisher_pearson_skewness(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mu = mean(values);
    let (mut m2, mut m3) = (0.0, 0.0);
    for &x in values {
        let d = x - mu;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min == max || m2 <= 0.0 {
        return 0.0;
    }
    m3 / m2.powf(1.5)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnSkew {
    pub column: String,
    pub g1: f64,
    /// Column score in `[0, 1]`.
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkewnessDetail {
    /// Numeric columns in dataset order.
    pub columns: Vec<ColumnSkew>,
}

pub fn skewness_score(dataset: &Dataset, config: &IngredientConfig) -> Result<(f64, SkewnessDetail)> {
    let saturation = config.skew_saturation;
    let columns: Vec<ColumnSkew> = dataset
        .columns()
        .par_iter()
        .filter(|c| c.is_numeric())
        .map(|column| {
            let g1 = fisher_pearson_skewness(&column.numbers());
            ColumnSkew {
                column: column.name().to_string(),
                g1,
                score: (1.0 - g1.abs().min(saturation) / saturation).max(0.0),
            }
        })
        .collect();
    if columns.is_empty() {
        return Err(Error::NotAssessed {
            ingredient: Ingredient::UnSkewness,
            reason: "dataset has no numeric columns".to_string(),
        });
    }
    let score = 100.0 * columns.iter().map(|c| c.score).sum::<f64>() / columns.len() as f64;
    Ok((score, SkewnessDetail { columns }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tabular::{parse_dataset, ParseOptions};

    #[test]
    fn symmetric_and_constant() {
        assert_eq!(fisher_pearson_skewness(&[1.0, 2.0, 3.0, 4.0, 5.0]), 0.0);
        assert_eq!(fisher_pearson_skewness(&[7.0, 7.0, 7.0]), 0.0);
        assert_eq!(fisher_pearson_skewness(&[0.1; 5]), 0.0);
    }

    #[test]
    fn right_tail() {
        // m2 = 15.1875, m3 = 68.34375
        let g1 = fisher_pearson_skewness(&[1.0, 1.0, 1.0, 10.0]);
        assert!((g1 - 2.0 / 3f64.sqrt()).abs() < 1e-12, "{g1}");
        let ds = parse_dataset(b"x\n1\n1\n1\n10\n", &ParseOptions::default()).unwrap();
        let (score, detail) = skewness_score(&ds, &IngredientConfig::default()).unwrap();
        assert!((detail.columns[0].score - 0.42264973081).abs() < 1e-10);
        assert!((score - 42.264973081).abs() < 1e-8);
    }

    #[test]
    fn symmetric_column_scores_one() {
        let ds = parse_dataset(b"x,t\n1,a\n2,b\n3,c\n4,d\n5,e\n", &ParseOptions::default()).unwrap();
        let (score, detail) = skewness_score(&ds, &IngredientConfig::default()).unwrap();
        assert_eq!(score, 100.0);
        assert_eq!(detail.columns.len(), 1);
    }

    #[test]
    fn no_numeric_columns() {
        let ds = parse_dataset(b"t\na\nb\n", &ParseOptions::default()).unwrap();
        assert!(matches!(
            skewness_score(&ds, &IngredientConfig::default()),
            Err(Error::NotAssessed { .. })
        ));
    }
}
