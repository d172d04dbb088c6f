use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::dataset::Dataset;
use super::stats::column_stats;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    Government,
    Institutional,
    Community,
}

/// Origin, authorship, recency and accessibility facts about a dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProvenanceManifest {
    pub source_kind: SourceKind,
    /// Download or usage count; only consulted for community sources.
    #[serde(default)]
    pub usage_count: u64,
    #[serde(default)]
    pub author: Option<String>,
    pub last_updated: NaiveDate,
    pub open_format: bool,
    pub license_present: bool,
    pub preprocessing_documented: bool,
}

impl ProvenanceManifest {
    pub fn has_author(&self) -> bool {
        self.author.as_deref().is_some_and(|a| !a.trim().is_empty())
    }

    /// Rejects a `last_updated` date after `today`.
    pub fn validate(&self, today: NaiveDate) -> Result<()> {
        if self.last_updated > today {
            return Err(Error::Validation(format!(
                "manifest last_updated {} is after the evaluation date {today}",
                self.last_updated
            )));
        }
        Ok(())
    }
}

/// Published statistics for one column; every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceColumn {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub median: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub std_dev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

/// Reference statistics keyed by column name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReferenceStats {
    pub columns: BTreeMap<String, ReferenceColumn>,
}

impl ReferenceStats {
    pub fn is_empty(&self) -> bool {
        self.columns.values().all(|c| *c == ReferenceColumn::default())
    }

    /// Reference holding exactly the statistics computed from `dataset`.
    pub fn from_dataset(dataset: &Dataset) -> Self {
        let columns = dataset
            .columns()
            .iter()
            .filter_map(|column| {
                let s = column_stats(column).ok()?;
                Some((
                    column.name().to_string(),
                    ReferenceColumn {
                        mean: Some(s.mean),
                        median: Some(s.median),
                        mode: Some(s.mode),
                        std_dev: Some(s.std_dev),
                        min: Some(s.min),
                        max: Some(s.max),
                        count: Some(s.count),
                    },
                ))
            })
            .collect();
        ReferenceStats { columns }
    }
}

fn from_json<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        let message = inner.to_string();
        // Unknown keys are reported under the offending key itself.
        let field = match message
            .strip_prefix("unknown field `")
            .and_then(|rest| rest.split('`').next())
        {
            Some(key) => key.to_string(),
            None if path == "." || path.is_empty() => "<root>".to_string(),
            None => path,
        };
        Error::Schema { field, message }
    })
}

pub fn parse_manifest(bytes: &[u8]) -> Result<ProvenanceManifest> {
    from_json(bytes)
}

pub fn parse_reference_stats(bytes: &[u8]) -> Result<ReferenceStats> {
    from_json(bytes)
}
