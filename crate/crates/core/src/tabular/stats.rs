use serde::{Deserialize, Serialize};

use super::dataset::Column;
use crate::{Error, Result};

/// Descriptive statistics of a column's numeric cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub mean: f64,
    pub median: f64,
    pub mode: f64,
    /// Population standard deviation.
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    /// Number of non-missing cells, numeric or not.
    pub count: u64,
}

/// Statistics over the non-missing numeric cells of `column`.
pub fn column_stats(column: &Column) -> Result<StatsSummary> {
    let mut values = column.numbers();
    if values.is_empty() {
        return Err(Error::NotNumeric(column.name().to_string()));
    }
    values.sort_by(f64::total_cmp);
    let summary = summarize_sorted(&values);
    Ok(StatsSummary {
        count: column.non_missing_count() as u64,
        ..summary
    })
}

/// Statistics of a non-empty, ascending slice. `count` is the slice length.
pub(crate) fn summarize_sorted(sorted: &[f64]) -> StatsSummary {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len();
    let mean = mean(sorted);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let variance = sorted.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
    StatsSummary {
        mean,
        median,
        mode: mode_sorted(sorted),
        std_dev: variance.sqrt(),
        min: sorted[0],
        max: sorted[n - 1],
        count: n as u64,
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Most frequent value; ties go to the smallest value.
fn mode_sorted(sorted: &[f64]) -> f64 {
    let mut best = sorted[0];
    let mut best_run = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i > best_run {
            best_run = j - i;
            best = sorted[i];
        }
        i = j;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tabular::Dataset;
    use proptest::prelude::*;

    fn column(cells: &[&str]) -> Dataset {
        let columns = vec![("x", cells.to_vec())];
        Dataset::from_columns("t", &columns, &["".to_string(), "NA".to_string()]).unwrap()
    }

    #[test]
    fn one_to_five() {
        let ds = column(&["1", "2", "3", "4", "5"]);
        let s = column_stats(ds.column(0)).unwrap();
        assert_eq!(s.mean, 3.0);
        assert_eq!(s.median, 3.0);
        assert_eq!(s.min, 1.0);
        assert_eq!(s.max, 5.0);
        assert_eq!(s.count, 5);
        // sum of squared deviations 10 over 5 values
        assert!((s.std_dev - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn constant_column() {
        let ds = column(&["7", "7", "7"]);
        let s = column_stats(ds.column(0)).unwrap();
        assert_eq!(s.mode, 7.0);
        assert_eq!(s.std_dev, 0.0);
    }

    #[test]
    fn mode_tie_takes_smallest() {
        let ds = column(&["2", "1", "2", "1"]);
        assert_eq!(column_stats(ds.column(0)).unwrap().mode, 1.0);
    }

    #[test]
    fn even_median_and_missing_cells() {
        let ds = column(&["4", "NA", "1", "3", "2", "oops"]);
        let s = column_stats(ds.column(0)).unwrap();
        assert_eq!(s.median, 2.5);
        // count covers every non-missing cell, including the text one
        assert_eq!(s.count, 5);
        assert_eq!(s.mean, 2.5);
    }

    #[test]
    fn text_column_is_not_numeric() {
        let ds = column(&["a", "b", "NA"]);
        assert!(matches!(
            column_stats(ds.column(0)),
            Err(Error::NotNumeric(name)) if name == "x"
        ));
    }

    proptest! {
        #[test]
        fn permutation_invariant(values in prop::collection::vec(-1000i32..1000, 1..40), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            let mut shuffled = cells.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let a = column(&cells.iter().map(String::as_str).collect::<Vec<_>>());
            let b = column(&shuffled.iter().map(String::as_str).collect::<Vec<_>>());
            let sa = column_stats(a.column(0)).unwrap();
            let sb = column_stats(b.column(0)).unwrap();
            prop_assert_eq!(sa, sb);
            prop_assert!(sa.min <= sa.median && sa.median <= sa.max);
            prop_assert!(sa.std_dev >= 0.0);
        }
    }
}
