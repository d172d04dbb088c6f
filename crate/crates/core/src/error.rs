use std::path::PathBuf;

use thiserror::Error;

use crate::ingredients::Ingredient;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("malformed CSV at row {row}: {message}")]
    Csv { row: usize, message: String },

    #[error("duplicate column name {0:?}")]
    DuplicateColumn(String),

    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("column {0:?} has no numeric cells")]
    NotNumeric(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("{ingredient} not assessed: {reason}")]
    NotAssessed { ingredient: Ingredient, reason: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no assessed ingredients to score")]
    NoIngredients,

    #[error("power iteration did not converge after {0} iterations")]
    NotConverged(usize),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}
