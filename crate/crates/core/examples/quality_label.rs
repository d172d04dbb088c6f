//! Render a quality label in all three formats and read the JSON back.
//!
//! ```bash
//! cargo run --example quality_label
//! ```

use dqscore::prelude::*;

pub fn run_example() -> Result<()> {
    let mut vector = IngredientVector::uniform(92.5);
    vector.set(Ingredient::NonMissing, Some(75.0));
    vector.set(Ingredient::NonDuplicate, Some(80.0));
    vector.set(Ingredient::DatasetCharacteristics, None);

    let label = QualityLabel::new(&vector, &WeightVector::published())?;
    print!("{}", String::from_utf8_lossy(&render_label(&label, Format::Text)));

    let json = render_label(&label, Format::Json);
    let back = QualityLabel::from_json(&json)?;
    assert_eq!(back, label);
    println!("\nJSON: {} bytes, round-trips exactly", json.len());

    let html = render_label(&label, Format::Html);
    println!(
        "HTML: {} bytes, no external resources: {}",
        html.len(),
        !String::from_utf8_lossy(&html).contains("http")
    );
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
