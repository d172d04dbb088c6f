use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::kind::{infer_cell_kind_with, parse_number, CellKind, DEFAULT_MISSING_TOKENS};
use crate::{Error, Result};

/// CSV dialect and cell-classification settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ParseOptions {
    /// Dataset name recorded on the parsed [`Dataset`].
    pub name: String,
    pub delimiter: u8,
    pub quote: u8,
    /// Cell values (case-insensitive, trimmed) classified as missing.
    pub missing_tokens: Vec<String>,
    /// Rows shorter than the header by at most this many fields are padded
    /// with empty cells. Longer rows are always rejected.
    pub short_row_tolerance: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            name: "dataset".to_string(),
            delimiter: b',',
            quote: b'"',
            missing_tokens: DEFAULT_MISSING_TOKENS.iter().map(|s| s.to_string()).collect(),
            short_row_tolerance: 0,
        }
    }
}

impl ParseOptions {
    pub fn named(name: impl Into<String>) -> Self {
        ParseOptions {
            name: name.into(),
            ..Default::default()
        }
    }
}

/// One column of raw trimmed cells, stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    name: String,
    text: String,
    ends: Vec<usize>,
    kinds: Vec<CellKind>,
}

impl Column {
    fn with_capacity(name: String, rows: usize) -> Self {
        Column {
            name,
            text: String::new(),
            ends: Vec::with_capacity(rows),
            kinds: Vec::with_capacity(rows),
        }
    }

    fn push(&mut self, raw: &str, missing_tokens: &[String]) {
        let cell = raw.trim();
        self.text.push_str(cell);
        self.ends.push(self.text.len());
        self.kinds.push(infer_cell_kind_with(cell, missing_tokens));
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn cell(&self, row: usize) -> &str {
        let start = if row == 0 { 0 } else { self.ends[row - 1] };
        &self.text[start..self.ends[row]]
    }

    pub fn cells(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        (0..self.len()).map(move |i| self.cell(i))
    }

    pub fn kinds(&self) -> &[CellKind] {
        &self.kinds
    }

    pub fn kind(&self, row: usize) -> CellKind {
        self.kinds[row]
    }

    pub fn missing_count(&self) -> usize {
        self.kinds.iter().filter(|k| k.is_missing()).count()
    }

    pub fn non_missing_count(&self) -> usize {
        self.len() - self.missing_count()
    }

    /// Numeric value of every cell; `None` for missing and non-numeric cells.
    pub fn numeric_values(&self) -> Vec<Option<f64>> {
        self.kinds
            .iter()
            .enumerate()
            .map(|(i, k)| {
                if k.is_numeric() {
                    parse_number(self.cell(i))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Values of the numeric cells in row order.
    pub fn numbers(&self) -> Vec<f64> {
        self.numeric_values().into_iter().flatten().collect()
    }

    /// A column is numeric when more than half of its non-missing cells are
    /// integers or reals.
    pub fn is_numeric(&self) -> bool {
        let numeric = self.kinds.iter().filter(|k| k.is_numeric()).count();
        numeric > 0 && numeric * 2 > self.non_missing_count()
    }
}

/// Immutable snapshot of a parsed table.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    columns: Vec<Column>,
    row_count: usize,
    missing_tokens: Arc<[String]>,
}

impl Dataset {
    /// Builds a dataset from a header and row-major cells.
    pub fn from_rows<S: AsRef<str>>(
        name: impl Into<String>,
        headers: &[S],
        rows: &[Vec<S>],
        missing_tokens: &[String],
    ) -> Result<Self> {
        let mut builder = Builder::new(
            name.into(),
            headers.iter().map(|h| h.as_ref().to_string()).collect(),
            missing_tokens,
            rows.len(),
        )?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != headers.len() {
                return Err(Error::Csv {
                    row: i + 1,
                    message: format!("expected {} fields, found {}", headers.len(), row.len()),
                });
            }
            builder.push_row(row.iter().map(|c| c.as_ref()));
        }
        Ok(builder.finish())
    }

    /// Builds a dataset from `(name, cells)` pairs.
    pub fn from_columns<S: AsRef<str>>(
        name: impl Into<String>,
        columns: &[(S, Vec<S>)],
        missing_tokens: &[String],
    ) -> Result<Self> {
        let row_count = columns.first().map_or(0, |(_, c)| c.len());
        if let Some((n, _)) = columns.iter().find(|(_, c)| c.len() != row_count) {
            return Err(Error::Degenerate(format!(
                "column {:?} does not have {row_count} cells",
                n.as_ref()
            )));
        }
        let headers: Vec<&str> = columns.iter().map(|(n, _)| n.as_ref()).collect();
        let rows: Vec<Vec<&str>> = (0..row_count)
            .map(|r| columns.iter().map(|(_, c)| c[r].as_ref()).collect())
            .collect();
        Dataset::from_rows(name, &headers, &rows, missing_tokens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, index: usize) -> &Column {
        &self.columns[index]
    }

    pub fn column_by_name(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn headers(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name()).collect()
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn cell_count(&self) -> usize {
        self.row_count * self.columns.len()
    }

    pub fn cell(&self, row: usize, column: usize) -> &str {
        self.columns[column].cell(row)
    }

    pub fn row(&self, row: usize) -> Vec<&str> {
        self.columns.iter().map(|c| c.cell(row)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<&str>> + '_ {
        (0..self.row_count).map(move |r| self.row(r))
    }

    pub fn missing_tokens(&self) -> &[String] {
        &self.missing_tokens
    }

    /// Copies the header and all rows into owned row-major form.
    pub fn to_rows(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let headers = self.headers().into_iter().map(String::from).collect();
        let rows = self.rows().map(|r| r.into_iter().map(String::from).collect()).collect();
        (headers, rows)
    }

    /// Rebuilds a dataset with the same name and missing tokens.
    pub fn rebuild<S: AsRef<str>>(&self, headers: &[S], rows: &[Vec<S>]) -> Result<Dataset> {
        Dataset::from_rows(self.name.clone(), headers, rows, &self.missing_tokens)
    }

    /// Serializes the dataset as RFC 4180 CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        // Writing into a Vec cannot fail.
        writer.write_record(self.headers()).expect("in-memory write");
        for row in self.rows() {
            writer.write_record(row).expect("in-memory write");
        }
        let bytes = writer.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("cells are UTF-8")
    }
}

struct Builder<'a> {
    name: String,
    columns: Vec<Column>,
    row_count: usize,
    missing_tokens: &'a [String],
}

impl<'a> Builder<'a> {
    fn new(name: String, headers: Vec<String>, missing_tokens: &'a [String], rows_hint: usize) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut columns = Vec::with_capacity(headers.len());
        for header in headers {
            let header = header.trim().to_string();
            if !seen.insert(header.clone()) {
                return Err(Error::DuplicateColumn(header));
            }
            columns.push(Column::with_capacity(header, rows_hint));
        }
        Ok(Builder {
            name,
            columns,
            row_count: 0,
            missing_tokens,
        })
    }

    fn push_row<'s>(&mut self, cells: impl Iterator<Item = &'s str>) {
        let mut n = 0;
        for (column, cell) in self.columns.iter_mut().zip(cells) {
            column.push(cell, self.missing_tokens);
            n += 1;
        }
        for column in &mut self.columns[n..] {
            column.push("", self.missing_tokens);
        }
        self.row_count += 1;
    }

    fn finish(self) -> Dataset {
        Dataset {
            name: self.name,
            columns: self.columns,
            row_count: self.row_count,
            missing_tokens: self.missing_tokens.to_vec().into(),
        }
    }
}

/// Parses CSV bytes whose first record is the header.
pub fn parse_dataset(bytes: &[u8], options: &ParseOptions) -> Result<Dataset> {
    let bytes = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes);
    if bytes.iter().all(|b| b.is_ascii_whitespace()) {
        return Err(Error::EmptyInput("dataset has no header row"));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(options.delimiter)
        .quote(options.quote)
        .from_reader(bytes);
    let mut records = reader.records();
    let header = match records.next() {
        Some(record) => record.map_err(|e| csv_error(0, e))?,
        None => return Err(Error::EmptyInput("dataset has no header row")),
    };
    let headers: Vec<String> = header.iter().map(str::to_string).collect();
    let width = headers.len();
    let mut builder = Builder::new(options.name.clone(), headers, &options.missing_tokens, 0)?;

    for (i, record) in records.enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| csv_error(row, e))?;
        if record.len() > width || record.len() + options.short_row_tolerance < width {
            return Err(Error::Csv {
                row,
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        builder.push_row(record.iter());
    }
    Ok(builder.finish())
}

fn csv_error(row: usize, err: csv::Error) -> Error {
    let row = err.position().map(|p| p.record() as usize).unwrap_or(row);
    Error::Csv {
        row,
        message: err.to_string(),
    }
}
