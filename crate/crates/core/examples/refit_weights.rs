//! Re-derive weights from a training matrix of ingredient scores (one row
//! per dataset) via the first principal component.
//!
//! ```bash
//! cargo run --example refit_weights
//! ```

use dqscore::prelude::*;
use dqscore::scoring::first_principal_component;

pub fn run_example() -> Result<()> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/training.csv");
    let bytes = std::fs::read(&path).map_err(|source| Error::Io { path, source })?;
    let training = TrainingMatrix::from_csv(&bytes)?;
    println!("{} training datasets", training.len());

    let (_, eigenvalue) = first_principal_component(&training)?;
    let (weights, loadings) = refit_weights(&training)?;
    println!("leading eigenvalue {eigenvalue:.4}");
    println!(
        "{:<26}{:>10}{:>10}{:>10}",
        "ingredient", "loading", "weight", "published"
    );
    let published = WeightVector::published();
    for ingredient in Ingredient::ALL {
        println!(
            "{:<26}{:>10.4}{:>10.2}{:>10.2}",
            ingredient.label(),
            loadings.get(ingredient),
            weights.get(ingredient),
            published.get(ingredient)
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
