//! Ingredient weights and the composite DQ score.
//!
//! Weights come from first-principal-component loadings: each loading is
//! shifted by +1 and the results are normalized to percentages. The
//! published loadings are embedded; [`refit_weights`] derives new ones from
//! a matrix of ingredient scores.

mod dq;
mod pca;
mod weights;

pub use dq::{dq_score, effective_weights};
pub use pca::{first_principal_component, refit_weights, TrainingMatrix, POWER_MAX_ITERATIONS, POWER_TOLERANCE};
pub use weights::{loadings_to_weights, LoadingsVector, WeightEntry, WeightVector, DEFAULT_LOADINGS};
