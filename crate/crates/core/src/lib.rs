//! Data-quality scoring for tabular datasets.
//!
//! A dataset is evaluated against nine quality ingredients (provenance,
//! uniformity, dataset characteristics, metadata coupling, non-duplicate rows,
//! non-missing cells, un-skewness, categorical consistency and
//! un-correlation). Each ingredient yields a score in `[0, 100]`; the scores
//! are combined with weights derived from first-principal-component loadings
//! into a single DQ score, which is rendered as a nutrition-style label and a
//! report listing the problems found.
//!
//! ```no_run
//! use dqscore::prelude::*;
//!
//! let data = std::fs::read("survey.csv").unwrap();
//! let dataset = parse_dataset(&data, &ParseOptions::default()).unwrap();
//! let codebook = parse_codebook(&std::fs::read("codebook.csv").unwrap()).unwrap();
//!
//! let inputs = Inputs::new(&dataset).with_codebook(&codebook);
//! let assessment = compute_all(&inputs, &IngredientConfig::default()).unwrap();
//! let score = dq_score(&assessment.ingredients, &WeightVector::published()).unwrap();
//! println!("DQ score: {score:.2}");
//! ```

pub mod cli;
mod error;
pub mod ingredients;
pub mod mutation;
pub mod report;
pub mod scoring;
pub mod similarity;
pub mod tabular;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::ingredients::{
        compute_all, Assessment, Evidence, Ingredient, IngredientConfig, IngredientVector, Inputs,
    };
    pub use crate::mutation::{apply_mutation, run_monotonicity_suite, MutationKind, MutationSpec, SuiteReport};
    pub use crate::report::{render_label, render_report, ComprehensiveReport, Format, QualityLabel};
    pub use crate::scoring::{
        dq_score, loadings_to_weights, refit_weights, LoadingsVector, TrainingMatrix, WeightVector,
    };
    pub use crate::similarity::{hybrid_score, preprocess, SimilarityProfile};
    pub use crate::tabular::{
        column_stats, infer_cell_kind, parse_codebook, parse_dataset, parse_manifest, parse_reference_stats, CellKind,
        Codebook, Dataset, DeclaredType, ParseOptions, ProvenanceManifest, ReferenceStats,
    };
}
