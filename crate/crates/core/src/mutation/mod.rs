//! Controlled impurity injection and removal, and the monotonicity suite
//! that checks the DQ score reacts in the expected direction.
//!
//! Every mutation is a pure function of its input and a [`MutationSpec`];
//! all randomness comes from a ChaCha8 stream seeded with `spec.seed`.

mod apply;
mod suite;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use apply::{apply_mutation, apply_mutation_with, Mutated, CORRUPT_TOKEN};
pub use suite::{
    parse_specs, run_monotonicity_suite, Direction, IngredientChange, MutationOutcome, SuiteReport, Verdict,
};

use crate::ingredients::Ingredient;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationKind {
    InjectMissing,
    InjectDuplicates,
    InjectCorrelatedColumn,
    InjectSkew,
    DegradeMetadata,
    CorruptCellTypes,
    RemoveMissingRows,
    Deduplicate,
    DropHighCorrelationColumns,
    ImproveMetadata,
}

/// Whether a mutation adds impurities or removes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationGroup {
    Noise,
    Clean,
}

impl MutationKind {
    pub const ALL: [MutationKind; 10] = [
        MutationKind::InjectMissing,
        MutationKind::InjectDuplicates,
        MutationKind::InjectCorrelatedColumn,
        MutationKind::InjectSkew,
        MutationKind::DegradeMetadata,
        MutationKind::CorruptCellTypes,
        MutationKind::RemoveMissingRows,
        MutationKind::Deduplicate,
        MutationKind::DropHighCorrelationColumns,
        MutationKind::ImproveMetadata,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MutationKind::InjectMissing => "inject_missing",
            MutationKind::InjectDuplicates => "inject_duplicates",
            MutationKind::InjectCorrelatedColumn => "inject_correlated_column",
            MutationKind::InjectSkew => "inject_skew",
            MutationKind::DegradeMetadata => "degrade_metadata",
            MutationKind::CorruptCellTypes => "corrupt_cell_types",
            MutationKind::RemoveMissingRows => "remove_missing_rows",
            MutationKind::Deduplicate => "deduplicate",
            MutationKind::DropHighCorrelationColumns => "drop_high_correlation_columns",
            MutationKind::ImproveMetadata => "improve_metadata",
        }
    }

    pub fn group(self) -> MutationGroup {
        match self {
            MutationKind::InjectMissing
            | MutationKind::InjectDuplicates
            | MutationKind::InjectCorrelatedColumn
            | MutationKind::InjectSkew
            | MutationKind::DegradeMetadata
            | MutationKind::CorruptCellTypes => MutationGroup::Noise,
            _ => MutationGroup::Clean,
        }
    }

    pub fn is_noise(self) -> bool {
        self.group() == MutationGroup::Noise
    }

    /// The ingredient the mutation is aimed at. Changes to any other
    /// ingredient are reported as entanglement.
    pub fn target(self) -> Ingredient {
        match self {
            MutationKind::InjectMissing | MutationKind::RemoveMissingRows => Ingredient::NonMissing,
            MutationKind::InjectDuplicates | MutationKind::Deduplicate => Ingredient::NonDuplicate,
            MutationKind::InjectCorrelatedColumn | MutationKind::DropHighCorrelationColumns => {
                Ingredient::UnCorrelation
            }
            MutationKind::InjectSkew => Ingredient::UnSkewness,
            MutationKind::DegradeMetadata | MutationKind::ImproveMetadata => Ingredient::MetadataCoupling,
            MutationKind::CorruptCellTypes => Ingredient::Uniformity,
        }
    }
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MutationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MutationKind::ALL
            .into_iter()
            .find(|k| k.id() == s.trim())
            .ok_or_else(|| Error::schema("kind", format!("unknown mutation kind {s:?}")))
    }
}

/// One mutation: what to do, how much of it, and the random seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutationSpec {
    pub kind: MutationKind,
    /// Fraction in `[0, 1]`; its meaning depends on the kind.
    pub magnitude: f64,
    #[serde(default)]
    pub seed: u64,
}

impl MutationSpec {
    pub fn new(kind: MutationKind, magnitude: f64, seed: u64) -> Self {
        MutationSpec { kind, magnitude, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.magnitude) {
            return Err(Error::schema(
                "magnitude",
                format!("{} is outside [0, 1]", self.magnitude),
            ));
        }
        Ok(())
    }
}
