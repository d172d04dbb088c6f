//! Parse a CSV and print per-column cell kinds, missing counts and summary
//! statistics.
//!
//! ```bash
//! cargo run --example profile_dataset
//! ```

use std::collections::BTreeMap;

use dqscore::prelude::*;

fn data(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

pub fn run_example() -> Result<()> {
    let bytes = std::fs::read(data("survey.csv")).map_err(|source| Error::Io {
        path: data("survey.csv"),
        source,
    })?;
    let dataset = parse_dataset(&bytes, &ParseOptions::named("survey"))?;
    println!(
        "{}: {} rows x {} columns",
        dataset.name(),
        dataset.row_count(),
        dataset.column_count()
    );

    for column in dataset.columns() {
        let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
        for kind in column.kinds() {
            *kinds.entry(format!("{kind:?}").to_lowercase()).or_default() += 1;
        }
        let kinds: Vec<String> = kinds.iter().map(|(k, n)| format!("{k}={n}")).collect();
        print!(
            "{:<16} missing={:<2} {}",
            column.name(),
            column.missing_count(),
            kinds.join(" ")
        );
        match column_stats(column) {
            Ok(s) if column.is_numeric() => println!(
                "  mean={:.2} median={:.2} sd={:.2} range=[{}, {}]",
                s.mean, s.median, s.std_dev, s.min, s.max
            ),
            _ => println!(),
        }
    }
    assert_eq!(dataset.column_count(), 8);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
