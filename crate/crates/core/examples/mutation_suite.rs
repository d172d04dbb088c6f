//! Inject and remove impurities, then check that the DQ score moves the
//! expected way for each mutation.
//!
//! ```bash
//! cargo run --example mutation_suite
//! ```

use dqscore::mutation::parse_specs;
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

    let one = apply_mutation(
        &dataset,
        &codebook,
        &MutationSpec::new(MutationKind::InjectMissing, 0.10, 42),
    )?;
    let missing = |d: &Dataset| d.columns().iter().map(|c| c.missing_count()).sum::<usize>();
    println!(
        "inject_missing 0.10: {} -> {} missing cells of {}\n",
        missing(&dataset),
        missing(&one.dataset),
        dataset.cell_count()
    );

    let specs = parse_specs(&read("mutation_specs.json")?)?;
    let inputs = Inputs::new(&dataset).with_codebook(&codebook);
    let report = run_monotonicity_suite(
        &inputs,
        &specs,
        &WeightVector::published(),
        &IngredientConfig::default(),
    )?;
    print!("{}", report.to_text());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
