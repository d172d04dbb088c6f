//! Build the comprehensive report and write it as JSON, text and a
//! standalone HTML page with missing rows in green and duplicates in yellow.
//!
//! ```bash
//! cargo run --example html_report -- /tmp/survey_report.html
//! ```

use chrono::NaiveDate;
use dqscore::prelude::*;
use dqscore::report::ReportOptions;

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
    let inputs = Inputs::new(&dataset)
        .with_codebook(&codebook)
        .with_manifest(&manifest)
        .on(NaiveDate::from_ymd_opt(2026, 1, 15).unwrap());
    let assessment = compute_all(&inputs, &IngredientConfig::default())?;
    let report = ComprehensiveReport::build(
        &dataset,
        &assessment,
        &WeightVector::published(),
        &ReportOptions::default(),
    )?;

    print!("{}", String::from_utf8_lossy(&render_report(&report, Format::Text)));

    let html = render_report(&report, Format::Html);
    let out = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("dqscore_survey_report.html"));
    std::fs::write(&out, &html).map_err(|source| Error::Io {
        path: out.clone(),
        source,
    })?;
    println!("\nwrote {} ({} bytes)", out.display(), html.len());
    assert!(String::from_utf8_lossy(&html).contains("class=\"dq-duplicate\""));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
