//! Turn first-component loadings into ingredient weights and score an
//! ingredient vector with them.
//!
//! ```bash
//! cargo run --example default_weights
//! ```

use dqscore::prelude::*;
use dqscore::scoring::DEFAULT_LOADINGS;

pub fn run_example() -> Result<()> {
    let loadings = LoadingsVector::published();
    println!("shifted loadings sum to {:.3}", loadings.shifted_sum());

    let weights = loadings.to_weights()?;
    for (ingredient, (l, w)) in Ingredient::ALL
        .iter()
        .zip(DEFAULT_LOADINGS.iter().zip(weights.values()))
    {
        println!("{:<26}{l:>8.3}{w:>14.9}", ingredient.label());
    }

    let mut vector = IngredientVector::uniform(100.0);
    vector.set(Ingredient::UnCorrelation, Some(0.0));
    let score = dq_score(&vector, &weights)?;
    println!("\nall ingredients perfect except un-correlation = 0: DQ {score:.2}");

    vector.set(Ingredient::Provenance, None);
    println!(
        "same, with provenance not assessed: DQ {:.2}",
        dq_score(&vector, &weights)?
    );

    let raw = loadings_to_weights(&[0.5, -0.5, 0.0])?;
    println!("three loadings [0.5, -0.5, 0.0] -> {raw:?}");
    assert!((weights.values().iter().sum::<f64>() - 100.0).abs() < 1e-9);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
