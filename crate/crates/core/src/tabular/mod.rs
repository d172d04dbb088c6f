//! Datasets, codebooks, provenance manifests and reference statistics.

mod codebook;
mod dataset;
mod kind;
mod manifest;
mod stats;

pub use codebook::{parse_codebook, Codebook, CodebookEntry, DeclaredType, CODEBOOK_HEADER};
pub use dataset::{parse_dataset, Column, Dataset, ParseOptions};
pub use kind::{infer_cell_kind, infer_cell_kind_with, CellKind, DEFAULT_MISSING_TOKENS};
pub use manifest::{
    parse_manifest, parse_reference_stats, ProvenanceManifest, ReferenceColumn, ReferenceStats, SourceKind,
};
pub use stats::{column_stats, StatsSummary};

pub(crate) use kind::parse_number;
pub(crate) use stats::mean;
