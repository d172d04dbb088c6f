//! Compare column names with codebook descriptions using the thirteen
//! similarity measures and their hybrid mean.
//!
//! ```bash
//! cargo run --example similarity
//! ```

use dqscore::prelude::*;

pub fn run_example() -> Result<()> {
    let pairs = [
        ("age", "age of respondent in completed years"),
        ("hh_size", "number of household members"),
        ("weight_kg", "wt"),
        ("income", "monthly household income"),
    ];

    let profile = SimilarityProfile::compute("age of respondent", "respondent age in years");
    println!("tokens: {:?} vs {:?}", profile.left, profile.right);
    for s in &profile.scores {
        println!("  {:<18}{:.4}", s.algorithm.id(), s.value);
    }
    println!("  {:<18}{:.4}\n", "hybrid", profile.hybrid);

    for (name, description) in pairs {
        println!("{name:<10} ~ {description:<40} {:.4}", hybrid_score(name, description));
    }
    assert!(hybrid_score("age", "age of respondent") > hybrid_score("weight_kg", "wt"));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
