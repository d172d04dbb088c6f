use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::tabular::Dataset;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnMissing {
    pub column: String,
    /// Zero-based data-row indices of the missing cells.
    pub rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissingDetail {
    pub total_cells: usize,
    pub missing_cells: usize,
    /// Columns with at least one missing cell, in dataset order.
    pub columns: Vec<ColumnMissing>,
}

impl MissingDetail {
    /// Every `(row, column)` coordinate of a missing cell, row-major.
    pub fn coordinates(&self) -> Vec<(usize, &str)> {
        let mut coords: Vec<(usize, usize, &str)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.rows.iter().map(move |&r| (r, c, col.column.as_str())))
            .collect();
        coords.sort_unstable_by_key(|&(r, c, _)| (r, c));
        coords.into_iter().map(|(r, _, name)| (r, name)).collect()
    }

    /// Sorted distinct rows holding at least one missing cell.
    pub fn rows(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self.columns.iter().flat_map(|c| c.rows.iter().copied()).collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }
}

pub fn missing_score(dataset: &Dataset) -> Result<(f64, MissingDetail)> {
    let total_cells = dataset.cell_count();
    if total_cells == 0 {
        return Err(Error::Degenerate("dataset has no cells".to_string()));
    }
    let columns: Vec<ColumnMissing> = dataset
        .columns()
        .iter()
        .map(|column| ColumnMissing {
            column: column.name().to_string(),
            rows: column
                .kinds()
                .iter()
                .enumerate()
                .filter(|(_, k)| k.is_missing())
                .map(|(i, _)| i)
                .collect(),
        })
        .filter(|c| !c.rows.is_empty())
        .collect();
    let missing_cells: usize = columns.iter().map(|c| c.rows.len()).sum();
    let score = 100.0 * (1.0 - missing_cells as f64 / total_cells as f64);
    Ok((
        score,
        MissingDetail {
            total_cells,
            missing_cells,
            columns,
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicateRow {
    pub row: usize,
    pub first_occurrence: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuplicateDetail {
    pub row_count: usize,
    /// Later copies of an earlier row, in row order.
    pub duplicates: Vec<DuplicateRow>,
}

fn rows_equal(dataset: &Dataset, a: usize, b: usize) -> bool {
    dataset.columns().iter().all(|c| c.cell(a) == c.cell(b))
}

fn row_hash(dataset: &Dataset, row: usize) -> u64 {
    let mut hasher = DefaultHasher::new();
    for column in dataset.columns() {
        column.cell(row).hash(&mut hasher);
    }
    hasher.finish()
}

/// Indices of rows identical to an earlier row, each paired with the first
/// row it repeats.
pub(crate) fn find_duplicates(dataset: &Dataset) -> Vec<DuplicateRow> {
    let mut firsts: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut duplicates = Vec::new();
    for row in 0..dataset.row_count() {
        let bucket = firsts.entry(row_hash(dataset, row)).or_default();
        match bucket.iter().find(|&&first| rows_equal(dataset, first, row)) {
            Some(&first) => duplicates.push(DuplicateRow {
                row,
                first_occurrence: first,
            }),
            None => bucket.push(row),
        }
    }
    duplicates
}

pub fn duplicate_score(dataset: &Dataset) -> Result<(f64, DuplicateDetail)> {
    let row_count = dataset.row_count();
    if row_count == 0 {
        return Err(Error::Degenerate("dataset has no rows".to_string()));
    }
    let duplicates = find_duplicates(dataset);
    let score = 100.0 * (1.0 - duplicates.len() as f64 / row_count as f64);
    Ok((score, DuplicateDetail { row_count, duplicates }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tabular::{parse_dataset, ParseOptions};

    fn parse(csv: &str) -> Dataset {
        parse_dataset(csv.as_bytes(), &ParseOptions::default()).unwrap()
    }

    #[test]
    fn quarter_missing() {
        let mut csv = String::from("a,b,c,d\n");
        for r in 0..25 {
            let cells: Vec<&str> = (0..4).map(|c| if c == r % 4 { "NA" } else { "1" }).collect();
            csv.push_str(&cells.join(","));
            csv.push('\n');
        }
        let (score, detail) = missing_score(&parse(&csv)).unwrap();
        assert_eq!(detail.total_cells, 100);
        assert_eq!(detail.missing_cells, 25);
        assert_eq!(score, 75.0);
        assert_eq!(detail.coordinates()[0], (0, "a"));
        assert_eq!(detail.rows().len(), 25);
    }

    #[test]
    fn missing_extremes() {
        assert_eq!(missing_score(&parse("a\n1\n2\n")).unwrap().0, 100.0);
        assert_eq!(missing_score(&parse("a,b\nNA,\n.,null\n")).unwrap().0, 0.0);
    }

    #[test]
    fn two_of_ten_duplicates() {
        let csv = "a,b\n1,x\n2,y\n3,z\n1,x\n4,w\n5,v\n2,y\n6,u\n7,t\n8,s\n";
        let (score, detail) = duplicate_score(&parse(csv)).unwrap();
        assert_eq!(score, 80.0);
        assert_eq!(
            detail.duplicates,
            [
                DuplicateRow {
                    row: 3,
                    first_occurrence: 0
                },
                DuplicateRow {
                    row: 6,
                    first_occurrence: 1
                }
            ]
        );
    }

    #[test]
    fn identical_rows_keep_first() {
        let (score, detail) = duplicate_score(&parse("a\n1\n1\n1\n1\n")).unwrap();
        assert_eq!(score, 25.0);
        assert!(detail.duplicates.iter().all(|d| d.first_occurrence == 0));
    }

    #[test]
    fn no_rows_is_degenerate() {
        assert!(matches!(duplicate_score(&parse("a,b\n")), Err(Error::Degenerate(_))));
        assert!(matches!(missing_score(&parse("a,b\n")), Err(Error::Degenerate(_))));
    }
}
