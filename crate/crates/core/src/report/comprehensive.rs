use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::label::QualityLabel;
use super::number::round_half_up;
use crate::ingredients::{
    Assessment, CharacteristicMismatch, ColumnCoupling, ColumnSkew, ColumnUniformity, CorrelationPair, DuplicateRow,
    InconsistentColumn, IngredientVector, NotAssessed, ProvenanceDetail,
};
use crate::scoring::WeightVector;
use crate::tabular::Dataset;
use crate::Result;

/// Columns whose hybrid coupling falls below this are flagged.
pub const DEFAULT_COUPLING_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportOptions {
    pub coupling_threshold: f64,
    /// Upper bound on rows copied into the report for highlighting.
    pub max_flagged_rows: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            coupling_threshold: DEFAULT_COUPLING_THRESHOLD,
            max_flagged_rows: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingCell {
    pub row: usize,
    pub column: String,
}

/// A data row carrying missing cells or repeating an earlier row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlaggedRow {
    pub row: usize,
    pub cells: Vec<String>,
    pub missing: bool,
    pub duplicate_of: Option<usize>,
}

/// The label plus every finding behind it and suggested fixes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComprehensiveReport {
    pub dataset: String,
    pub row_count: usize,
    pub column_count: usize,
    pub dq_score: f64,
    pub ingredients: IngredientVector,
    pub label: QualityLabel,
    pub not_assessed: Vec<NotAssessed>,
    /// Highly correlated pairs, strongest first.
    pub correlated_pairs: Vec<CorrelationPair>,
    pub coupling_threshold: f64,
    pub low_coupling_columns: Vec<ColumnCoupling>,
    pub missing_cells: Vec<MissingCell>,
    pub duplicate_rows: Vec<DuplicateRow>,
    /// Numeric columns with nonzero skewness, most skewed first.
    pub skewed_columns: Vec<ColumnSkew>,
    pub type_mismatches: Vec<ColumnUniformity>,
    pub inconsistent_columns: Vec<InconsistentColumn>,
    pub provenance: Option<ProvenanceDetail>,
    pub characteristics_mismatches: Vec<CharacteristicMismatch>,
    pub suggestions: Vec<String>,
    pub columns: Vec<String>,
    pub flagged_rows: Vec<FlaggedRow>,
    /// Flagged rows beyond `max_flagged_rows`, not copied.
    pub flagged_rows_omitted: usize,
}

fn name_list<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    let names: Vec<&str> = names.into_iter().collect();
    const SHOWN: usize = 12;
    if names.len() <= SHOWN {
        names.join(", ")
    } else {
        format!("{} and {} more", names[..SHOWN].join(", "), names.len() - SHOWN)
    }
}

impl ComprehensiveReport {
    pub fn build(
        dataset: &Dataset,
        assessment: &Assessment,
        weights: &WeightVector,
        options: &ReportOptions,
    ) -> Result<Self> {
        let label = QualityLabel::new(&assessment.ingredients, weights)?;
        let ev = &assessment.evidence;

        let correlated_pairs: Vec<CorrelationPair> = ev
            .un_correlation
            .iter()
            .flat_map(|d| d.pairs.iter().filter(|p| p.high).cloned())
            .collect();
        let low_coupling_columns: Vec<ColumnCoupling> = ev
            .metadata_coupling
            .iter()
            .flat_map(|d| {
                d.columns
                    .iter()
                    .filter(|c| c.coupling < options.coupling_threshold)
                    .cloned()
            })
            .collect();
        let mut missing_cells: Vec<MissingCell> = Vec::new();
        let mut missing_rows = BTreeSet::new();
        if let Some(d) = &ev.non_missing {
            for (row, column) in d.coordinates() {
                missing_rows.insert(row);
                missing_cells.push(MissingCell {
                    row,
                    column: column.to_string(),
                });
            }
        }
        let duplicate_rows: Vec<DuplicateRow> = ev.non_duplicate.iter().flat_map(|d| d.duplicates.clone()).collect();
        let mut skewed_columns: Vec<ColumnSkew> = ev
            .un_skewness
            .iter()
            .flat_map(|d| d.columns.iter().filter(|c| c.g1 != 0.0).cloned())
            .collect();
        skewed_columns.sort_by(|a, b| b.g1.abs().total_cmp(&a.g1.abs()));
        let type_mismatches: Vec<ColumnUniformity> = ev
            .uniformity
            .iter()
            .flat_map(|d| d.columns.iter().filter(|c| !c.mismatched_rows.is_empty()).cloned())
            .collect();
        let inconsistent_columns = ev
            .categorical_consistency
            .as_ref()
            .map_or_else(Vec::new, |d| d.inconsistent.clone());
        let characteristics_mismatches = ev
            .dataset_characteristics
            .as_ref()
            .map_or_else(Vec::new, |d| d.mismatches.clone());

        let mut flags: BTreeMap<usize, (bool, Option<usize>)> = BTreeMap::new();
        for &row in &missing_rows {
            flags.entry(row).or_default().0 = true;
        }
        for d in &duplicate_rows {
            flags.entry(d.row).or_default().1 = Some(d.first_occurrence);
        }
        let flagged_rows_omitted = flags.len().saturating_sub(options.max_flagged_rows);
        let flagged_rows = flags
            .into_iter()
            .take(options.max_flagged_rows)
            .map(|(row, (missing, duplicate_of))| FlaggedRow {
                row,
                cells: dataset.row(row).into_iter().map(String::from).collect(),
                missing,
                duplicate_of,
            })
            .collect();

        let mut report = ComprehensiveReport {
            dataset: dataset.name().to_string(),
            row_count: dataset.row_count(),
            column_count: dataset.column_count(),
            dq_score: label.total,
            ingredients: assessment.ingredients,
            label,
            not_assessed: ev.not_assessed.clone(),
            correlated_pairs,
            coupling_threshold: options.coupling_threshold,
            low_coupling_columns,
            missing_cells,
            duplicate_rows,
            skewed_columns,
            type_mismatches,
            inconsistent_columns,
            provenance: ev.provenance.clone(),
            characteristics_mismatches,
            suggestions: Vec::new(),
            columns: dataset.headers().into_iter().map(String::from).collect(),
            flagged_rows,
            flagged_rows_omitted,
        };
        report.suggestions = report.make_suggestions();
        Ok(report)
    }

    fn make_suggestions(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(p) = &self.provenance {
            let mut gaps = Vec::new();
            if p.origin < 1.0 {
                gaps.push("cite a government or institutional source");
            }
            if p.author < 1.0 {
                gaps.push("name the author");
            }
            if p.recency < 1.0 {
                gaps.push("publish an updated release");
            }
            let access: Vec<&str> = [
                (p.open_format, "an open file format"),
                (p.license_present, "a license"),
                (p.preprocessing_documented, "preprocessing notes"),
            ]
            .into_iter()
            .filter(|(present, _)| !present)
            .map(|(_, what)| what)
            .collect();
            let access = (!access.is_empty()).then(|| format!("provide {}", access.join(", ")));
            let mut gaps: Vec<String> = gaps.into_iter().map(String::from).collect();
            gaps.extend(access);
            if !gaps.is_empty() {
                out.push(format!("Provenance: {}.", gaps.join("; ")));
            }
        }
        if !self.type_mismatches.is_empty() {
            out.push(format!(
                "Uniformity: columns {} hold values that do not match their declared type; correct the cells or the declared type.",
                name_list(self.type_mismatches.iter().map(|c| c.column.as_str()))
            ));
        }
        if !self.characteristics_mismatches.is_empty() {
            let mut columns: Vec<&str> = self
                .characteristics_mismatches
                .iter()
                .map(|m| m.column.as_str())
                .collect();
            columns.dedup();
            out.push(format!(
                "Dataset characteristics: statistics of columns {} differ from the reference; verify the data against its source.",
                name_list(columns)
            ));
        }
        if !self.low_coupling_columns.is_empty() {
            out.push(format!(
                "Metadata coupling: columns {} have coupling below {}; improve the description of each in the codebook.",
                name_list(self.low_coupling_columns.iter().map(|c| c.column.as_str())),
                round_half_up(self.coupling_threshold, 2)
            ));
        }
        if !self.duplicate_rows.is_empty() {
            let rows: Vec<String> = self.duplicate_rows.iter().map(|d| d.row.to_string()).collect();
            out.push(format!(
                "Non-duplicate rows: remove the {} duplicate rows (rows {}).",
                rows.len(),
                name_list(rows.iter().map(String::as_str))
            ));
        }
        if !self.missing_cells.is_empty() {
            let mut columns: Vec<&str> = self.missing_cells.iter().map(|m| m.column.as_str()).collect();
            columns.sort_unstable();
            columns.dedup();
            let ordered: Vec<&str> = self
                .columns
                .iter()
                .map(String::as_str)
                .filter(|c| columns.contains(c))
                .collect();
            out.push(format!(
                "Non-missing cells: fill or remove the {} missing cells in columns {}.",
                self.missing_cells.len(),
                name_list(ordered)
            ));
        }
        if !self.skewed_columns.is_empty() {
            let worst = self.skewed_columns[0].g1.abs();
            out.push(format!(
                "Un-skewness: columns {} are skewed (|g1| up to {}); consider a transformation.",
                name_list(self.skewed_columns.iter().map(|c| c.column.as_str())),
                round_half_up(worst, 2)
            ));
        }
        if !self.inconsistent_columns.is_empty() {
            out.push(format!(
                "Categorical consistency: columns {} contradict their declared measurement level; review their declared types.",
                name_list(self.inconsistent_columns.iter().map(|c| c.column.as_str()))
            ));
        }
        if !self.correlated_pairs.is_empty() {
            let pairs: Vec<String> = self
                .correlated_pairs
                .iter()
                .map(|p| format!("{} ~ {}", p.left, p.right))
                .collect();
            out.push(format!(
                "Un-correlation: pairs {} are highly correlated; consider dropping one column of each pair.",
                name_list(pairs.iter().map(String::as_str))
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = self.label.to_text();
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "Dataset: {} ({} rows x {} columns)",
            self.dataset, self.row_count, self.column_count
        );
        let section = |out: &mut String, title: &str, lines: Vec<String>| {
            let _ = writeln!(out, "\n{title}");
            if lines.is_empty() {
                let _ = writeln!(out, "  none");
            }
            for line in lines {
                let _ = writeln!(out, "  {line}");
            }
        };
        section(
            &mut out,
            "Not assessed",
            self.not_assessed
                .iter()
                .map(|n| format!("{}: {}", n.ingredient, n.reason))
                .collect(),
        );
        section(
            &mut out,
            "Correlated pairs",
            self.correlated_pairs
                .iter()
                .map(|p| format!("{} ~ {}  r = {}", p.left, p.right, round_half_up(p.r, 3)))
                .collect(),
        );
        section(
            &mut out,
            "Low metadata coupling",
            self.low_coupling_columns
                .iter()
                .map(|c| format!("{}  {}", c.column, round_half_up(c.coupling, 2)))
                .collect(),
        );
        section(
            &mut out,
            "Missing cells",
            self.missing_cells
                .iter()
                .map(|m| format!("row {} column {}", m.row, m.column))
                .collect(),
        );
        section(
            &mut out,
            "Duplicate rows",
            self.duplicate_rows
                .iter()
                .map(|d| format!("row {} repeats row {}", d.row, d.first_occurrence))
                .collect(),
        );
        section(
            &mut out,
            "Skewed columns",
            self.skewed_columns
                .iter()
                .map(|c| format!("{}  g1 = {}", c.column, round_half_up(c.g1, 3)))
                .collect(),
        );
        section(
            &mut out,
            "Type mismatches",
            self.type_mismatches
                .iter()
                .map(|c| format!("{} ({}): {} cells", c.column, c.declared_type, c.mismatched_rows.len()))
                .collect(),
        );
        section(
            &mut out,
            "Inconsistent categorical columns",
            self.inconsistent_columns
                .iter()
                .map(|c| format!("{} declared {} but looks {:?}", c.column, c.declared_type, c.detected).to_lowercase())
                .collect(),
        );
        section(
            &mut out,
            "Characteristics mismatches",
            self.characteristics_mismatches
                .iter()
                .map(|m| {
                    let computed = m.computed.map_or_else(|| "n/a".to_string(), |c| round_half_up(c, 2));
                    format!(
                        "{} {:?}: reference {} computed {}",
                        m.column,
                        m.parameter,
                        round_half_up(m.reference, 2),
                        computed
                    )
                })
                .collect(),
        );
        section(&mut out, "Suggestions", self.suggestions.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingredients::{compute_all, IngredientConfig, Inputs};
    use crate::tabular::{parse_codebook, parse_dataset, ParseOptions};

    fn report(csv: &str, codebook: &str) -> ComprehensiveReport {
        let ds = parse_dataset(csv.as_bytes(), &ParseOptions::named("fixture")).unwrap();
        let cb = parse_codebook(format!("column,description,declared_type\n{codebook}").as_bytes()).unwrap();
        let inputs = Inputs::new(&ds).with_codebook(&cb);
        let assessment = compute_all(&inputs, &IngredientConfig::default()).unwrap();
        ComprehensiveReport::build(&ds, &assessment, &WeightVector::published(), &ReportOptions::default()).unwrap()
    }

    #[test]
    fn clean_dataset_has_no_findings() {
        let r = report("a,b\n1,3\n2,1\n3,2\n", "a,a,continuous\nb,b,continuous\n");
        assert!(r.suggestions.is_empty(), "{:?}", r.suggestions);
        assert!(r.missing_cells.is_empty() && r.duplicate_rows.is_empty() && r.correlated_pairs.is_empty());
    }

    #[test]
    fn perfect_pair_listed_first() {
        let r = report(
            "x,y,z\n1,1,5\n2,2,1\n3,3,4\n4,4,2\n",
            "x,x,continuous\ny,y,continuous\nz,z,continuous\n",
        );
        assert_eq!(r.correlated_pairs[0].left, "x");
        assert!(r.to_text().contains("x ~ y  r = 1.000"));
    }

    #[test]
    fn low_coupling_suggestion() {
        let r = report(
            "v1,age\n1,2\n2,3\n",
            "v1,region of residence,continuous\nage,age,continuous\n",
        );
        assert_eq!(r.low_coupling_columns[0].column, "v1");
        let s = r.suggestions.iter().find(|s| s.contains("v1")).unwrap();
        assert!(s.contains("improve the description"));
    }

    #[test]
    fn flagged_rows_and_round_trip() {
        let r = report("a,b\n1,x\n,y\n1,x\n", "a,a,continuous\nb,b,categorical\n");
        assert_eq!(r.flagged_rows.len(), 2);
        assert!(r.flagged_rows[0].missing);
        assert_eq!(r.flagged_rows[1].duplicate_of, Some(0));
        let back: ComprehensiveReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
