use chrono::{Datelike, Months, NaiveDate};
use serde::{Deserialize, Serialize};

use super::IngredientConfig;
use crate::tabular::{ProvenanceManifest, SourceKind};
use crate::Result;

/// Provenance rubric: four equally weighted parts, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceDetail {
    pub origin: f64,
    pub author: f64,
    pub recency: f64,
    pub accessibility: f64,
    pub years_since_update: f64,
    pub source_kind: SourceKind,
    pub open_format: bool,
    pub license_present: bool,
    pub preprocessing_documented: bool,
}

/// Fractional years from `earlier` to `later`: whole calendar years plus
/// the elapsed share of the following year.
pub fn years_between(earlier: NaiveDate, later: NaiveDate) -> f64 {
    if later <= earlier {
        return 0.0;
    }
    let add_years = |n: i32| {
        earlier
            .checked_add_months(Months::new(12 * n as u32))
            .expect("date within chrono range")
    };
    let mut whole = later.year() - earlier.year();
    if add_years(whole) > later {
        whole -= 1;
    }
    let start = add_years(whole);
    let end = add_years(whole + 1);
    let elapsed = (later - start).num_days() as f64;
    let span = (end - start).num_days() as f64;
    whole as f64 + elapsed / span
}

pub fn provenance_score(
    manifest: &ProvenanceManifest,
    today: NaiveDate,
    config: &IngredientConfig,
) -> Result<(f64, ProvenanceDetail)> {
    manifest.validate(today)?;
    let origin = match manifest.source_kind {
        SourceKind::Government | SourceKind::Institutional => 1.0,
        SourceKind::Community => ((1.0 + manifest.usage_count as f64).log10() / config.usage_log_divisor).min(1.0),
    };
    let author = if manifest.has_author() { 1.0 } else { 0.0 };
    let years = years_between(manifest.last_updated, today);
    let recency = (1.0 - years / config.recency_window_years).max(0.0);
    let flags = [
        manifest.open_format,
        manifest.license_present,
        manifest.preprocessing_documented,
    ];
    let accessibility = flags.iter().filter(|f| **f).count() as f64 / 3.0;
    let score = 25.0 * origin + 25.0 * author + 25.0 * recency + 25.0 * accessibility;
    Ok((
        score.clamp(0.0, 100.0),
        ProvenanceDetail {
            origin,
            author,
            recency,
            accessibility,
            years_since_update: years,
            source_kind: manifest.source_kind,
            open_format: manifest.open_format,
            license_present: manifest.license_present,
            preprocessing_documented: manifest.preprocessing_documented,
        },
    ))
}
