//! Score a dataset with its codebook, provenance manifest and reference
//! statistics, then print the label and the evidence behind two of the
//! ingredients.
//!
//! ```bash
//! cargo run --example score_dataset
//! ```

use chrono::NaiveDate;
use dqscore::prelude::*;

fn read(name: &str) -> Result<Vec<u8>> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name);
    std::fs::read(&path).map_err(|source| Error::Io { path, source })
}

pub fn run_example() -> Result<()> {
    let dataset = parse_dataset(&read("survey.csv")?, &ParseOptions::named("survey"))?;
    let codebook = parse_codebook(&read("survey_codebook.csv")?)?;
    let manifest = parse_manifest(&read("survey_manifest.json")?)?;
    let reference = parse_reference_stats(&read("survey_reference.json")?)?;

    let inputs = Inputs::new(&dataset)
        .with_codebook(&codebook)
        .with_manifest(&manifest)
        .with_reference(&reference)
        .on(NaiveDate::from_ymd_opt(2026, 1, 15).unwrap());
    let assessment = compute_all(&inputs, &IngredientConfig::default())?;

    let label = QualityLabel::new(&assessment.ingredients, &WeightVector::published())?;
    print!("{}", label.to_text());

    if let Some(coupling) = &assessment.evidence.metadata_coupling {
        println!("\nweakest descriptions:");
        for c in coupling.columns.iter().take(3) {
            println!(
                "  {:<16}{:.3}  {:?}",
                c.column,
                c.coupling,
                c.description.as_deref().unwrap_or("")
            );
        }
    }
    if let Some(missing) = &assessment.evidence.non_missing {
        println!("missing cells (row, column): {:?}", missing.coordinates());
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
