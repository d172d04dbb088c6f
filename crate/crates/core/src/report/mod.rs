//! Quality label and comprehensive report rendering in JSON, plain text and
//! standalone HTML.
//!
//! JSON is the canonical form and round-trips exactly. Text and HTML show
//! numbers rounded half-up to two decimals.

mod comprehensive;
mod html;
mod label;
mod number;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use comprehensive::{ComprehensiveReport, FlaggedRow, MissingCell, ReportOptions, DEFAULT_COUPLING_THRESHOLD};
pub use label::{LabelEntry, QualityLabel, METRIC_VERSION};
pub use number::round_half_up;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Html,
}

impl Format {
    pub fn id(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
            Format::Html => "html",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "text" | "txt" => Ok(Format::Text),
            "html" => Ok(Format::Html),
            _ => Err(Error::Usage(format!(
                "unknown format {s:?}; expected json, text or html"
            ))),
        }
    }
}

pub fn render_label(label: &QualityLabel, format: Format) -> Vec<u8> {
    match format {
        Format::Json => label.to_json().into_bytes(),
        Format::Text => label.to_text().into_bytes(),
        Format::Html => html::label_page(label).into_bytes(),
    }
}

pub fn render_report(report: &ComprehensiveReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => report.to_json().into_bytes(),
        Format::Text => report.to_text().into_bytes(),
        Format::Html => html::report_page(report).into_bytes(),
    }
}
