use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Ingredient, IngredientConfig};
use crate::tabular::Dataset;
use crate::{Error, Result};

/// Why a pair's coefficient was set to 0 instead of computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairFlag {
    ZeroVariance,
    InsufficientData,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationPair {
    pub left: String,
    pub right: String,
    pub r: f64,
    /// Rows where both cells are numeric.
    pub observations: usize,
    pub high: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<PairFlag>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationDetail {
    pub threshold: f64,
    pub numeric_columns: Vec<String>,
    pub high_pairs: usize,
    /// Every pair, strongest |r| first.
    pub pairs: Vec<CorrelationPair>,
}

/// Pearson r over the rows where both values are present. Returns the
/// coefficient (or the reason it is undefined) and the number of complete
/// observations.
pub fn pearson(x: &[Option<f64>], y: &[Option<f64>]) -> (std::result::Result<f64, PairFlag>, usize) {
    let (mut n, mut sx, mut sy) = (0usize, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        if let (Some(a), Some(b)) = (a, b) {
            n += 1;
            sx += a;
            sy += b;
        }
    }
    if n < 2 {
        return (Err(PairFlag::InsufficientData), n);
    }
    let (mx, my) = (sx / n as f64, sy / n as f64);
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        if let (Some(a), Some(b)) = (a, b) {
            let (dx, dy) = (a - mx, b - my);
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return (Err(PairFlag::ZeroVariance), n);
    }
    (Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)), n)
}

pub fn correlation_score(dataset: &Dataset, config: &IngredientConfig) -> Result<(f64, CorrelationDetail)> {
    let numeric: Vec<(&str, Vec<Option<f64>>)> = dataset
        .columns()
        .par_iter()
        .filter(|c| c.is_numeric())
        .map(|c| (c.name(), c.numeric_values()))
        .collect();
    if numeric.len() < 2 {
        return Err(Error::NotAssessed {
            ingredient: Ingredient::UnCorrelation,
            reason: "fewer than two numeric columns".to_string(),
        });
    }
    let k = numeric.len();
    let index: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let threshold = config.correlation_threshold;
    let mut pairs: Vec<((usize, usize), CorrelationPair)> = index
        .par_iter()
        .map(|&(i, j)| {
            let (outcome, observations) = pearson(&numeric[i].1, &numeric[j].1);
            let (r, flag) = match outcome {
                Ok(r) => (r, None),
                Err(flag) => (0.0, Some(flag)),
            };
            let pair = CorrelationPair {
                left: numeric[i].0.to_string(),
                right: numeric[j].0.to_string(),
                r,
                observations,
                high: r.abs() >= threshold,
                flag,
            };
            ((i, j), pair)
        })
        .collect();
    pairs.sort_by(|(ka, a), (kb, b)| b.r.abs().total_cmp(&a.r.abs()).then(ka.cmp(kb)));
    let pairs: Vec<CorrelationPair> = pairs.into_iter().map(|(_, p)| p).collect();
    let high_pairs = pairs.iter().filter(|p| p.high).count();
    let score = 100.0 * (1.0 - high_pairs as f64 / pairs.len() as f64);
    Ok((
        score,
        CorrelationDetail {
            threshold,
            numeric_columns: numeric.iter().map(|(n, _)| n.to_string()).collect(),
            high_pairs,
            pairs,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tabular::{parse_dataset, ParseOptions};

    fn score(csv: &str) -> (f64, CorrelationDetail) {
        let ds = parse_dataset(csv.as_bytes(), &ParseOptions::default()).unwrap();
        correlation_score(&ds, &IngredientConfig::default()).unwrap()
    }

    #[test]
    fn identical_and_negated() {
        let (s, d) = score("x,y\n1,1\n2,2\n3,3\n5,5\n");
        assert_eq!(s, 0.0);
        assert_eq!(d.pairs[0].r, 1.0);
        let (s, d) = score("x,y\n1,-1\n2,-2\n3,-3\n5,-5\n");
        assert_eq!(s, 0.0);
        assert_eq!(d.pairs[0].r, -1.0);
    }

    #[test]
    fn one_high_pair_of_three() {
        // a and b nearly collinear; c orthogonal to both by construction
        let (s, d) = score("a,b,c\n1,1,1\n2,2,-1\n3,3,-1\n4,5,1\n");
        assert!((s - 200.0 / 3.0).abs() < 1e-9, "{s}");
        assert_eq!((d.pairs[0].left.as_str(), d.pairs[0].right.as_str()), ("a", "b"));
        assert_eq!(d.high_pairs, 1);
    }

    #[test]
    fn zero_variance_flagged() {
        let (s, d) = score("x,k\n1,3\n2,3\n4,3\n");
        assert_eq!(s, 100.0);
        assert_eq!(d.pairs[0].flag, Some(PairFlag::ZeroVariance));
        assert_eq!(d.pairs[0].r, 0.0);
    }

    #[test]
    fn pairwise_complete_observations() {
        let x = [Some(1.0), None, Some(3.0), Some(4.0)];
        let y = [Some(2.0), Some(9.0), Some(6.0), None];
        let (r, n) = pearson(&x, &y);
        assert_eq!(n, 2);
        assert!((r.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(pearson(&x[..1], &y[..1]).0, Err(PairFlag::InsufficientData));
    }

    #[test]
    fn needs_two_numeric_columns() {
        let ds = parse_dataset(b"x,t\n1,a\n2,b\n", &ParseOptions::default()).unwrap();
        assert!(matches!(
            correlation_score(&ds, &IngredientConfig::default()),
            Err(Error::NotAssessed { .. })
        ));
    }
}
