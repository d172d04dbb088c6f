use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

/// Tokens treated as missing, compared case-insensitively after trimming.
pub const DEFAULT_MISSING_TOKENS: [&str; 6] = ["", "NA", "N/A", "NAN", "NULL", "."];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Missing,
    Integer,
    Real,
    Date,
    Boolean,
    Text,
}

impl CellKind {
    pub fn is_missing(self) -> bool {
        self == CellKind::Missing
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, CellKind::Integer | CellKind::Real)
    }
}

/// Classifies a raw cell using the default missing tokens.
pub fn infer_cell_kind(raw: &str) -> CellKind {
    infer_cell_kind_with(raw, &DEFAULT_MISSING_TOKENS)
}

/// Classifies a raw cell. Missing tokens take priority over every other kind.
pub fn infer_cell_kind_with<S: AsRef<str>>(raw: &str, missing_tokens: &[S]) -> CellKind {
    let s = raw.trim();
    if missing_tokens.iter().any(|t| t.as_ref().trim().eq_ignore_ascii_case(s)) {
        return CellKind::Missing;
    }
    if is_integer_literal(s) && parse_number(s).is_some() {
        return CellKind::Integer;
    }
    if is_real_literal(s) {
        return CellKind::Real;
    }
    if is_iso_date(s) {
        return CellKind::Date;
    }
    if s.eq_ignore_ascii_case("true") || s.eq_ignore_ascii_case("false") {
        return CellKind::Boolean;
    }
    CellKind::Text
}

/// Parses a cell already classified as numeric.
pub(crate) fn parse_number(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_real_literal(s: &str) -> bool {
    // Rust's float grammar also accepts "inf" and "nan"; restrict to plain
    // decimal and exponent notation.
    s.bytes().any(|b| b.is_ascii_digit())
        && s.bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'))
        && parse_number(s).is_some()
}

fn is_iso_date(s: &str) -> bool {
    let b = s.as_bytes();
    b.len() == 10
        && b[4] == b'-'
        && b[7] == b'-'
        && b.iter()
            .enumerate()
            .all(|(i, c)| i == 4 || i == 7 || c.is_ascii_digit())
        && NaiveDate::parse_from_str(s, "%Y-%m-%d").is_ok()
}
