//! The nine data-quality ingredients.
//!
//! Every scorer is a pure function of its inputs and returns a score in
//! `[0, 100]` together with structured evidence. An ingredient whose inputs
//! are absent or unusable reports [`Error::NotAssessed`]; [`compute_all`]
//! records those as not assessed instead of failing.

mod characteristics;
mod completeness;
mod consistency;
mod correlation;
mod coupling;
mod provenance;
mod skewness;
mod uniformity;

use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use characteristics::{characteristics_score, CharacteristicMismatch, CharacteristicsDetail, StatParameter};
pub(crate) use completeness::find_duplicates;
pub use completeness::{duplicate_score, missing_score, ColumnMissing, DuplicateDetail, DuplicateRow, MissingDetail};
pub use consistency::{
    categorical_consistency_score, detect_measurement, ConsistencyDetail, InconsistentColumn, Measurement,
};
pub use correlation::{correlation_score, pearson, CorrelationDetail, CorrelationPair, PairFlag};
pub use coupling::{metadata_coupling_score, ColumnCoupling, CouplingDetail};
pub use provenance::{provenance_score, years_between, ProvenanceDetail};
pub use skewness::{fisher_pearson_skewness, skewness_score, ColumnSkew, SkewnessDetail};
pub use uniformity::{kind_compatible, uniformity_score, ColumnUniformity, UniformityDetail};

use crate::tabular::{Codebook, Dataset, ProvenanceManifest, ReferenceStats};
use crate::{Error, Result};

/// Ingredient identifiers in canonical (weight table) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ingredient {
    Provenance,
    Uniformity,
    DatasetCharacteristics,
    MetadataCoupling,
    NonDuplicate,
    NonMissing,
    UnSkewness,
    CategoricalConsistency,
    UnCorrelation,
}

impl Ingredient {
    pub const ALL: [Ingredient; 9] = [
        Ingredient::Provenance,
        Ingredient::Uniformity,
        Ingredient::DatasetCharacteristics,
        Ingredient::MetadataCoupling,
        Ingredient::NonDuplicate,
        Ingredient::NonMissing,
        Ingredient::UnSkewness,
        Ingredient::CategoricalConsistency,
        Ingredient::UnCorrelation,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn id(self) -> &'static str {
        match self {
            Ingredient::Provenance => "provenance",
            Ingredient::Uniformity => "uniformity",
            Ingredient::DatasetCharacteristics => "dataset_characteristics",
            Ingredient::MetadataCoupling => "metadata_coupling",
            Ingredient::NonDuplicate => "non_duplicate",
            Ingredient::NonMissing => "non_missing",
            Ingredient::UnSkewness => "un_skewness",
            Ingredient::CategoricalConsistency => "categorical_consistency",
            Ingredient::UnCorrelation => "un_correlation",
        }
    }

    /// Human-readable label used on the quality label.
    pub fn label(self) -> &'static str {
        match self {
            Ingredient::Provenance => "Provenance",
            Ingredient::Uniformity => "Uniformity",
            Ingredient::DatasetCharacteristics => "Dataset Characteristics",
            Ingredient::MetadataCoupling => "Metadata Coupling",
            Ingredient::NonDuplicate => "Non-Duplicate Rows",
            Ingredient::NonMissing => "Non-Missing Cells",
            Ingredient::UnSkewness => "Un-skewness",
            Ingredient::CategoricalConsistency => "Categorical Consistency",
            Ingredient::UnCorrelation => "Un-correlation",
        }
    }
}

impl fmt::Display for Ingredient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Ingredient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ingredient::ALL
            .into_iter()
            .find(|i| i.id() == s.trim())
            .ok_or_else(|| Error::schema("ingredient", format!("unknown ingredient {s:?}")))
    }
}

/// The nine ingredient scores; `None` marks an ingredient that was not
/// assessed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IngredientVector {
    pub provenance: Option<f64>,
    pub uniformity: Option<f64>,
    pub dataset_characteristics: Option<f64>,
    pub metadata_coupling: Option<f64>,
    pub non_duplicate: Option<f64>,
    pub non_missing: Option<f64>,
    pub un_skewness: Option<f64>,
    pub categorical_consistency: Option<f64>,
    pub un_correlation: Option<f64>,
}

impl IngredientVector {
    pub fn uniform(score: f64) -> Self {
        let mut v = Self::default();
        for i in Ingredient::ALL {
            v.set(i, Some(score));
        }
        v
    }

    fn slot(&mut self, ingredient: Ingredient) -> &mut Option<f64> {
        match ingredient {
            Ingredient::Provenance => &mut self.provenance,
            Ingredient::Uniformity => &mut self.uniformity,
            Ingredient::DatasetCharacteristics => &mut self.dataset_characteristics,
            Ingredient::MetadataCoupling => &mut self.metadata_coupling,
            Ingredient::NonDuplicate => &mut self.non_duplicate,
            Ingredient::NonMissing => &mut self.non_missing,
            Ingredient::UnSkewness => &mut self.un_skewness,
            Ingredient::CategoricalConsistency => &mut self.categorical_consistency,
            Ingredient::UnCorrelation => &mut self.un_correlation,
        }
    }

    pub fn get(&self, ingredient: Ingredient) -> Option<f64> {
        self.to_array()[ingredient.index()]
    }

    pub fn set(&mut self, ingredient: Ingredient, score: Option<f64>) {
        *self.slot(ingredient) = score;
    }

    pub fn to_array(&self) -> [Option<f64>; 9] {
        [
            self.provenance,
            self.uniformity,
            self.dataset_characteristics,
            self.metadata_coupling,
            self.non_duplicate,
            self.non_missing,
            self.un_skewness,
            self.categorical_consistency,
            self.un_correlation,
        ]
    }

    /// Assessed ingredients in canonical order.
    pub fn assessed(&self) -> Vec<Ingredient> {
        Ingredient::ALL.into_iter().filter(|i| self.get(*i).is_some()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Ingredient, Option<f64>)> {
        Ingredient::ALL.into_iter().zip(self.to_array())
    }
}

/// Tunable thresholds for the ingredient scorers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IngredientConfig {
    /// Pairs with |r| at or above this value count as highly correlated.
    pub correlation_threshold: f64,
    /// |g1| at which a column's skewness score reaches 0.
    pub skew_saturation: f64,
    /// A numeric column whose distinct/non-missing ratio exceeds this is
    /// treated as continuous.
    pub categorical_distinct_ratio: f64,
    /// A numeric column with more distinct values than this is continuous.
    pub categorical_distinct_count: usize,
    /// Community sources reach full origin credit at 10^divisor - 1 usages.
    pub usage_log_divisor: f64,
    /// Years after which recency credit reaches 0.
    pub recency_window_years: f64,
    /// Relative tolerance for matching reference statistics.
    pub characteristics_tolerance: f64,
}

impl Default for IngredientConfig {
    fn default() -> Self {
        IngredientConfig {
            correlation_threshold: 0.8,
            skew_saturation: 2.0,
            categorical_distinct_ratio: 0.5,
            categorical_distinct_count: 20,
            usage_log_divisor: 4.0,
            recency_window_years: 10.0,
            characteristics_tolerance: 1e-6,
        }
    }
}

impl IngredientConfig {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            (
                "correlation_threshold",
                self.correlation_threshold > 0.0 && self.correlation_threshold <= 1.0,
                "must be in (0, 1]",
            ),
            (
                "skew_saturation",
                self.skew_saturation > 0.0 && self.skew_saturation.is_finite(),
                "must be positive",
            ),
            (
                "categorical_distinct_ratio",
                (0.0..=1.0).contains(&self.categorical_distinct_ratio),
                "must be in [0, 1]",
            ),
            (
                "usage_log_divisor",
                self.usage_log_divisor > 0.0 && self.usage_log_divisor.is_finite(),
                "must be positive",
            ),
            (
                "recency_window_years",
                self.recency_window_years > 0.0 && self.recency_window_years.is_finite(),
                "must be positive",
            ),
            (
                "characteristics_tolerance",
                self.characteristics_tolerance >= 0.0 && self.characteristics_tolerance.is_finite(),
                "must be non-negative",
            ),
        ];
        match checks.into_iter().find(|(_, ok, _)| !ok) {
            Some((field, _, message)) => Err(Error::schema(field, message)),
            None => Ok(()),
        }
    }
}

/// Everything an assessment reads. Only the dataset is required.
#[derive(Debug, Clone, Copy)]
pub struct Inputs<'a> {
    pub dataset: &'a Dataset,
    pub codebook: Option<&'a Codebook>,
    pub manifest: Option<&'a ProvenanceManifest>,
    pub reference: Option<&'a ReferenceStats>,
    pub today: NaiveDate,
}

impl<'a> Inputs<'a> {
    /// Inputs for `dataset` evaluated as of the local date.
    pub fn new(dataset: &'a Dataset) -> Self {
        Inputs {
            dataset,
            codebook: None,
            manifest: None,
            reference: None,
            today: chrono::Local::now().date_naive(),
        }
    }

    pub fn with_codebook(mut self, codebook: &'a Codebook) -> Self {
        self.codebook = Some(codebook);
        self
    }

    pub fn with_manifest(mut self, manifest: &'a ProvenanceManifest) -> Self {
        self.manifest = Some(manifest);
        self
    }

    pub fn with_reference(mut self, reference: &'a ReferenceStats) -> Self {
        self.reference = Some(reference);
        self
    }

    pub fn on(mut self, today: NaiveDate) -> Self {
        self.today = today;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NotAssessed {
    pub ingredient: Ingredient,
    pub reason: String,
}

/// Findings behind each assessed ingredient.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub provenance: Option<ProvenanceDetail>,
    pub uniformity: Option<UniformityDetail>,
    pub dataset_characteristics: Option<CharacteristicsDetail>,
    pub metadata_coupling: Option<CouplingDetail>,
    pub non_duplicate: Option<DuplicateDetail>,
    pub non_missing: Option<MissingDetail>,
    pub un_skewness: Option<SkewnessDetail>,
    pub categorical_consistency: Option<ConsistencyDetail>,
    pub un_correlation: Option<CorrelationDetail>,
    pub not_assessed: Vec<NotAssessed>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assessment {
    pub ingredients: IngredientVector,
    pub evidence: Evidence,
}

enum Outcome {
    Provenance(ProvenanceDetail),
    Uniformity(UniformityDetail),
    Characteristics(CharacteristicsDetail),
    Coupling(CouplingDetail),
    Duplicate(DuplicateDetail),
    Missing(MissingDetail),
    Skewness(SkewnessDetail),
    Consistency(ConsistencyDetail),
    Correlation(CorrelationDetail),
}

fn not_assessed(ingredient: Ingredient, reason: &str) -> Error {
    Error::NotAssessed {
        ingredient,
        reason: reason.to_string(),
    }
}

fn evaluate(ingredient: Ingredient, inputs: &Inputs<'_>, config: &IngredientConfig) -> Result<(f64, Outcome)> {
    let ds = inputs.dataset;
    let missing_codebook = || not_assessed(ingredient, "no codebook supplied");
    Ok(match ingredient {
        Ingredient::Provenance => {
            let manifest = inputs
                .manifest
                .ok_or_else(|| not_assessed(ingredient, "no provenance manifest supplied"))?;
            let (s, d) = provenance_score(manifest, inputs.today, config)?;
            (s, Outcome::Provenance(d))
        }
        Ingredient::Uniformity => {
            let (s, d) = uniformity_score(ds, inputs.codebook.ok_or_else(missing_codebook)?)?;
            (s, Outcome::Uniformity(d))
        }
        Ingredient::DatasetCharacteristics => {
            let reference = inputs
                .reference
                .ok_or_else(|| not_assessed(ingredient, "no reference statistics supplied"))?;
            let (s, d) = characteristics_score(ds, reference, config)?;
            (s, Outcome::Characteristics(d))
        }
        Ingredient::MetadataCoupling => {
            let codebook = inputs.codebook.ok_or_else(missing_codebook)?;
            let (s, d) = metadata_coupling_score(ds, codebook)?;
            (s, Outcome::Coupling(d))
        }
        Ingredient::NonDuplicate => {
            let (s, d) = duplicate_score(ds)?;
            (s, Outcome::Duplicate(d))
        }
        Ingredient::NonMissing => {
            let (s, d) = missing_score(ds)?;
            (s, Outcome::Missing(d))
        }
        Ingredient::UnSkewness => {
            let (s, d) = skewness_score(ds, config)?;
            (s, Outcome::Skewness(d))
        }
        Ingredient::CategoricalConsistency => {
            let codebook = inputs.codebook.ok_or_else(missing_codebook)?;
            let (s, d) = categorical_consistency_score(ds, codebook, config)?;
            (s, Outcome::Consistency(d))
        }
        Ingredient::UnCorrelation => {
            let (s, d) = correlation_score(ds, config)?;
            (s, Outcome::Correlation(d))
        }
    })
}

/// Evaluates all nine ingredients. Ingredients whose inputs are missing or
/// unusable are left unassessed and explained in the evidence. Fails only
/// when the dataset has no cells at all.
pub fn compute_all(inputs: &Inputs<'_>, config: &IngredientConfig) -> Result<Assessment> {
    config.validate()?;
    if inputs.dataset.cell_count() == 0 {
        return Err(Error::Degenerate("dataset has no cells".to_string()));
    }
    let outcomes: Vec<(Ingredient, Result<(f64, Outcome)>)> = Ingredient::ALL
        .par_iter()
        .map(|&i| (i, evaluate(i, inputs, config)))
        .collect();

    let mut ingredients = IngredientVector::default();
    let mut evidence = Evidence::default();
    for (ingredient, outcome) in outcomes {
        match outcome {
            Ok((score, detail)) => {
                ingredients.set(ingredient, Some(score));
                match detail {
                    Outcome::Provenance(d) => evidence.provenance = Some(d),
                    Outcome::Uniformity(d) => evidence.uniformity = Some(d),
                    Outcome::Characteristics(d) => evidence.dataset_characteristics = Some(d),
                    Outcome::Coupling(d) => evidence.metadata_coupling = Some(d),
                    Outcome::Duplicate(d) => evidence.non_duplicate = Some(d),
                    Outcome::Missing(d) => evidence.non_missing = Some(d),
                    Outcome::Skewness(d) => evidence.un_skewness = Some(d),
                    Outcome::Consistency(d) => evidence.categorical_consistency = Some(d),
                    Outcome::Correlation(d) => evidence.un_correlation = Some(d),
                }
            }
            Err(Error::NotAssessed { reason, .. }) => evidence.not_assessed.push(NotAssessed { ingredient, reason }),
            Err(other) => evidence.not_assessed.push(NotAssessed {
                ingredient,
                reason: other.to_string(),
            }),
        }
    }
    Ok(Assessment { ingredients, evidence })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let ids: Vec<_> = Ingredient::ALL.iter().map(|i| i.id()).collect();
        assert_eq!(
            ids,
            [
                "provenance",
                "uniformity",
                "dataset_characteristics",
                "metadata_coupling",
                "non_duplicate",
                "non_missing",
                "un_skewness",
                "categorical_consistency",
                "un_correlation"
            ]
        );
        for (n, i) in Ingredient::ALL.iter().enumerate() {
            assert_eq!(i.index(), n);
            assert_eq!(i.id().parse::<Ingredient>().unwrap(), *i);
        }
    }

    #[test]
    fn vector_serializes_in_canonical_order() {
        let mut v = IngredientVector::uniform(100.0);
        v.set(Ingredient::DatasetCharacteristics, None);
        let json = serde_json::to_string(&v).unwrap();
        let provenance = json.find("provenance").unwrap();
        let correlation = json.find("un_correlation").unwrap();
        assert!(provenance < correlation);
        assert!(json.contains("\"dataset_characteristics\":null"));
        assert_eq!(v.assessed().len(), 8);
    }

    #[test]
    fn config_validation() {
        assert!(IngredientConfig::default().validate().is_ok());
        let bad = IngredientConfig {
            correlation_threshold: 1.5,
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(Error::Schema { field, .. }) if field == "correlation_threshold"));
    }
}
