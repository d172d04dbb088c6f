use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const CODEBOOK_HEADER: [&str; 3] = ["column", "description", "declared_type"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeclaredType {
    Categorical,
    Continuous,
    Text,
    Date,
}

impl DeclaredType {
    pub fn as_str(self) -> &'static str {
        match self {
            DeclaredType::Categorical => "categorical",
            DeclaredType::Continuous => "continuous",
            DeclaredType::Text => "text",
            DeclaredType::Date => "date",
        }
    }
}

impl fmt::Display for DeclaredType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DeclaredType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "categorical" => Ok(DeclaredType::Categorical),
            "continuous" => Ok(DeclaredType::Continuous),
            "text" => Ok(DeclaredType::Text),
            "date" => Ok(DeclaredType::Date),
            _ => Err(Error::schema(
                "declared_type",
                format!("invalid value {s:?}, expected categorical, continuous, text or date"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodebookEntry {
    pub description: String,
    pub declared_type: DeclaredType,
}

/// Column metadata keyed by column name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codebook {
    entries: BTreeMap<String, CodebookEntry>,
}

impl Codebook {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry; names must be unique.
    pub fn insert(
        &mut self,
        column: impl Into<String>,
        description: impl Into<String>,
        declared_type: DeclaredType,
    ) -> Result<()> {
        let column = column.into().trim().to_string();
        if self.entries.contains_key(&column) {
            return Err(Error::schema("column", format!("duplicate entry {column:?}")));
        }
        self.entries.insert(
            column,
            CodebookEntry {
                description: description.into().trim().to_string(),
                declared_type,
            },
        );
        Ok(())
    }

    pub fn get(&self, column: &str) -> Option<&CodebookEntry> {
        self.entries.get(column)
    }

    pub(crate) fn get_mut(&mut self, column: &str) -> Option<&mut CodebookEntry> {
        self.entries.get_mut(column)
    }

    pub fn remove(&mut self, column: &str) -> Option<CodebookEntry> {
        self.entries.remove(column)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &CodebookEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        writer.write_record(CODEBOOK_HEADER).expect("in-memory write");
        for (name, entry) in &self.entries {
            writer
                .write_record([name.as_str(), &entry.description, entry.declared_type.as_str()])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("UTF-8")
    }
}

/// Parses a codebook CSV with header `column,description,declared_type`.
pub fn parse_codebook(bytes: &[u8]) -> Result<Codebook> {
    let bytes = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let header = reader
        .headers()
        .map_err(|e| Error::Csv {
            row: 0,
            message: e.to_string(),
        })?
        .clone();
    if header.is_empty() {
        return Err(Error::EmptyInput("codebook has no header row"));
    }
    if let Some(unknown) = header.iter().find(|h| !CODEBOOK_HEADER.contains(h)) {
        return Err(Error::schema(unknown, "unknown codebook column"));
    }
    for (i, expected) in CODEBOOK_HEADER.iter().enumerate() {
        if header.get(i) != Some(*expected) {
            return Err(Error::schema(
                *expected,
                "codebook header must be exactly `column,description,declared_type`",
            ));
        }
    }

    let mut codebook = Codebook::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::Csv {
            row,
            message: e.to_string(),
        })?;
        if record.len() != 3 {
            return Err(Error::Csv {
                row,
                message: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let name = &record[0];
        if name.is_empty() {
            return Err(Error::schema("column", format!("empty column name on row {row}")));
        }
        let declared_type: DeclaredType = record[2].parse()?;
        codebook.insert(name, &record[1], declared_type)?;
    }
    Ok(codebook)
}
