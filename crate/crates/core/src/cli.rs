//! Command-line front end.
//!
//! ```text
//! dqscore score      --data d.csv [--codebook c.csv] [--manifest m.json] [--reference r.json]
//! dqscore refit      --training t.csv
//! dqscore mutate     --data d.csv --codebook c.csv (--kind K --magnitude M | --specs s.json)
//! dqscore similarity "age of respondent" "respondent age in years"
//! dqscore label      --input label.json --format html
//! ```
//!
//! A `--config file.json` object may supply any long flag (keys in
//! snake_case or kebab-case); flags given on the command line win. Exit
//! status is 0 on success, 1 on validation errors and 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::ingredients::{compute_all, IngredientConfig, Inputs};
use crate::mutation::{apply_mutation_with, parse_specs, run_monotonicity_suite, MutationKind, MutationSpec};
use crate::report::{render_label, render_report, ComprehensiveReport, Format, QualityLabel, ReportOptions};
use crate::scoring::{refit_weights, TrainingMatrix, WeightVector};
use crate::similarity::SimilarityProfile;
use crate::tabular::{
    parse_codebook, parse_dataset, parse_manifest, parse_reference_stats, Codebook, Dataset, ParseOptions,
    ProvenanceManifest, ReferenceStats,
};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "dqscore",
    version,
    about = "Score the quality of a tabular dataset",
    args_override_self = true
)]
struct Cli {
    /// JSON file supplying default values for any flag.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the nine ingredients, the DQ score and the report.
    Score(ScoreArgs),
    /// Derive weights from a training matrix of ingredient scores.
    Refit(RefitArgs),
    /// Apply mutations and check that the DQ score moves as expected.
    Mutate(MutateArgs),
    /// Print the thirteen similarity scores and their hybrid mean.
    Similarity(SimilarityArgs),
    /// Re-render a stored label (or report) JSON.
    Label(LabelArgs),
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Dataset CSV with a header row.
    #[arg(long, value_name = "FILE")]
    data: PathBuf,
    /// Codebook CSV (column,description,declared_type).
    #[arg(long, value_name = "FILE")]
    codebook: Option<PathBuf>,
    /// Provenance manifest JSON.
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
    /// Reference statistics JSON.
    #[arg(long, value_name = "FILE")]
    reference: Option<PathBuf>,
    /// Weights JSON; defaults to the published weights.
    #[arg(long, value_name = "FILE")]
    weights: Option<PathBuf>,
    /// CSV field delimiter.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Extra cell values to treat as missing (repeatable).
    #[arg(long = "missing-token", value_name = "TOKEN")]
    missing_tokens: Vec<String>,
    /// Evaluation date for provenance recency (YYYY-MM-DD); defaults to today.
    #[arg(long, value_name = "DATE")]
    today: Option<NaiveDate>,
    /// Worker threads for ingredient evaluation; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// |r| at or above which a column pair counts as highly correlated.
    #[arg(long)]
    correlation_threshold: Option<f64>,
    /// |g1| at which a column's skewness score reaches 0.
    #[arg(long)]
    skew_saturation: Option<f64>,
    /// Distinct/non-missing ratio above which a numeric column is continuous.
    #[arg(long)]
    categorical_distinct_ratio: Option<f64>,
    /// Distinct count above which a numeric column is continuous.
    #[arg(long)]
    categorical_distinct_count: Option<usize>,
    /// Community sources reach full origin credit at 10^divisor - 1 usages.
    #[arg(long)]
    usage_log_divisor: Option<f64>,
    /// Years after which recency credit reaches 0.
    #[arg(long)]
    recency_window_years: Option<f64>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Output format: json, text or html.
    #[arg(long, default_value = "json")]
    format: String,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Coupling below which a column is flagged in the report.
    #[arg(long, default_value_t = crate::report::DEFAULT_COUPLING_THRESHOLD)]
    coupling_threshold: f64,
    /// Maximum number of flagged rows copied into the report.
    #[arg(long, default_value_t = 1000)]
    max_flagged_rows: usize,
}

#[derive(Debug, Args)]
struct RefitArgs {
    /// Training matrix CSV: one column per ingredient, one row per dataset.
    #[arg(long, value_name = "FILE")]
    training: PathBuf,
    /// Weights output file; stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Optional file receiving the first-component loadings as JSON.
    #[arg(long, value_name = "FILE")]
    loadings_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MutateArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Single mutation kind, e.g. inject_missing.
    #[arg(long, conflicts_with = "specs")]
    kind: Option<String>,
    /// Mutation magnitude in [0, 1].
    #[arg(long, default_value_t = 0.1)]
    magnitude: f64,
    /// Seed for all mutation randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON array of {kind, magnitude, seed} to run as a suite.
    #[arg(long, value_name = "FILE")]
    specs: Option<PathBuf>,
    /// Where to write the mutated dataset (single mutation only).
    #[arg(long, value_name = "FILE")]
    out_data: Option<PathBuf>,
    /// Where to write the mutated codebook (single mutation only).
    #[arg(long, value_name = "FILE")]
    out_codebook: Option<PathBuf>,
    /// Suite report format: json or text.
    #[arg(long, default_value = "json")]
    format: String,
    /// Suite report output file; stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimilarityArgs {
    /// Column name (or any text).
    left: String,
    /// Description (or any text).
    right: String,
    /// Output format: json or text.
    #[arg(long, default_value = "text")]
    format: String,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LabelArgs {
    /// Label JSON, or a report JSON containing one.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Output format: json, text or html.
    #[arg(long, default_value = "text")]
    format: String,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_output(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    let io = |source| Error::Io {
        path: path.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf),
        source,
    };
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(io),
        None => stdout.write_all(bytes).map_err(io),
    }
}

fn parse_format(s: &str, allowed: &[Format]) -> Result<Format> {
    let format: Format = s.parse()?;
    if !allowed.contains(&format) {
        return Err(Error::Usage(format!("format {format} is not supported here")));
    }
    Ok(format)
}

/// Turns a config object into long flags placed ahead of the real ones.
fn config_flags(path: &Path) -> Result<Vec<OsString>> {
    let value: serde_json::Value =
        serde_json::from_slice(&read(path)?).map_err(|e| Error::schema("config", e.to_string()))?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::schema("config", "expected a JSON object"))?;
    let mut flags = Vec::new();
    for (key, value) in object {
        let flag = format!("--{}", key.replace('_', "-"));
        let values: Vec<&serde_json::Value> = match value {
            serde_json::Value::Array(items) => items.iter().collect(),
            other => vec![other],
        };
        for v in values {
            match v {
                serde_json::Value::Bool(true) => flags.push(flag.clone().into()),
                serde_json::Value::Bool(false) | serde_json::Value::Null => {}
                serde_json::Value::String(s) => {
                    flags.push(flag.clone().into());
                    flags.push(s.into());
                }
                serde_json::Value::Number(n) => {
                    flags.push(flag.clone().into());
                    flags.push(n.to_string().into());
                }
                _ => return Err(Error::schema(key.clone(), "expected a scalar or an array of scalars")),
            }
        }
    }
    Ok(flags)
}

fn find_config(argv: &[OsString]) -> Option<PathBuf> {
    let mut iter = argv.iter().skip(1);
    while let Some(arg) = iter.next() {
        let arg = arg.to_string_lossy();
        if arg == "--config" {
            return iter.next().map(PathBuf::from);
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Some(PathBuf::from(path));
        }
    }
    None
}

fn subcommand_position(argv: &[OsString]) -> Option<usize> {
    const NAMES: [&str; 5] = ["score", "refit", "mutate", "similarity", "label"];
    argv.iter().position(|a| NAMES.contains(&a.to_string_lossy().as_ref()))
}

/// Parses and runs one invocation, writing documents to `stdout` and
/// diagnostics to `stderr`. Returns the exit status.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let mut argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if let Some(config) = find_config(&argv) {
        match config_flags(&config) {
            Ok(flags) => {
                let at = subcommand_position(&argv).map_or(argv.len(), |p| p + 1);
                argv.splice(at..at, flags);
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return exit_code(&e);
            }
        }
    }
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Usage(_) => 2,
        _ => 1,
    }
}

struct Loaded {
    dataset: Dataset,
    codebook: Option<Codebook>,
    manifest: Option<ProvenanceManifest>,
    reference: Option<ReferenceStats>,
    weights: WeightVector,
    config: IngredientConfig,
    today: NaiveDate,
}

impl Loaded {
    fn inputs(&self) -> Inputs<'_> {
        Inputs {
            dataset: &self.dataset,
            codebook: self.codebook.as_ref(),
            manifest: self.manifest.as_ref(),
            reference: self.reference.as_ref(),
            today: self.today,
        }
    }
}

fn load(args: &DataArgs) -> Result<Loaded> {
    let mut options = ParseOptions::named(
        args.data
            .file_stem()
            .map_or_else(|| "dataset".to_string(), |s| s.to_string_lossy().into_owned()),
    );
    if !args.delimiter.is_ascii() {
        return Err(Error::Usage("--delimiter must be an ASCII character".to_string()));
    }
    options.delimiter = args.delimiter as u8;
    options.missing_tokens.extend(args.missing_tokens.iter().cloned());
    let dataset = parse_dataset(&read(&args.data)?, &options)?;
    let codebook = args
        .codebook
        .as_deref()
        .map(|p| read(p).and_then(|b| parse_codebook(&b)))
        .transpose()?;
    let manifest = args
        .manifest
        .as_deref()
        .map(|p| read(p).and_then(|b| parse_manifest(&b)))
        .transpose()?;
    let reference = args
        .reference
        .as_deref()
        .map(|p| read(p).and_then(|b| parse_reference_stats(&b)))
        .transpose()?;
    let weights = match &args.weights {
        Some(p) => WeightVector::from_json(&read(p)?)?,
        None => WeightVector::published(),
    };
    let mut config = IngredientConfig::default();
    if let Some(v) = args.correlation_threshold {
        config.correlation_threshold = v;
    }
    if let Some(v) = args.skew_saturation {
        config.skew_saturation = v;
    }
    if let Some(v) = args.categorical_distinct_ratio {
        config.categorical_distinct_ratio = v;
    }
    if let Some(v) = args.categorical_distinct_count {
        config.categorical_distinct_count = v;
    }
    if let Some(v) = args.usage_log_divisor {
        config.usage_log_divisor = v;
    }
    if let Some(v) = args.recency_window_years {
        config.recency_window_years = v;
    }
    config.validate()?;
    Ok(Loaded {
        dataset,
        codebook,
        manifest,
        reference,
        weights,
        config,
        today: args.today.unwrap_or_else(|| chrono::Local::now().date_naive()),
    })
}

fn in_pool<T: Send>(threads: usize, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker threads: {e}")))?;
    pool.install(job)
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Score(args) => {
            let format = parse_format(&args.format, &[Format::Json, Format::Text, Format::Html])?;
            let loaded = load(&args.data)?;
            let options = ReportOptions {
                coupling_threshold: args.coupling_threshold,
                max_flagged_rows: args.max_flagged_rows,
            };
            let report = in_pool(args.data.threads, || {
                let assessment = compute_all(&loaded.inputs(), &loaded.config)?;
                ComprehensiveReport::build(&loaded.dataset, &assessment, &loaded.weights, &options)
            })?;
            write_output(args.out.as_deref(), &render_report(&report, format), stdout)
        }
        Command::Refit(args) => {
            let training = TrainingMatrix::from_csv(&read(&args.training)?)?;
            let (weights, loadings) = refit_weights(&training)?;
            if let Some(path) = &args.loadings_out {
                let json = serde_json::to_string_pretty(&loadings)?;
                write_output(Some(path), json.as_bytes(), stdout)?;
            }
            let mut json = weights.to_json();
            json.push('\n');
            write_output(args.out.as_deref(), json.as_bytes(), stdout)
        }
        Command::Mutate(args) => {
            let format = parse_format(&args.format, &[Format::Json, Format::Text])?;
            let loaded = load(&args.data)?;
            let specs = match (&args.kind, &args.specs) {
                (Some(kind), None) => {
                    vec![MutationSpec::new(
                        kind.parse::<MutationKind>()?,
                        args.magnitude,
                        args.seed,
                    )]
                }
                (None, Some(path)) => {
                    if args.out_data.is_some() || args.out_codebook.is_some() {
                        return Err(Error::Usage(
                            "--out-data and --out-codebook need a single --kind".to_string(),
                        ));
                    }
                    parse_specs(&read(path)?)?
                }
                _ => return Err(Error::Usage("give exactly one of --kind or --specs".to_string())),
            };
            if args.specs.is_none() {
                let empty = Codebook::new();
                let codebook = loaded.codebook.as_ref().unwrap_or(&empty);
                let mutated = apply_mutation_with(&loaded.dataset, codebook, &specs[0], &loaded.config)?;
                if let Some(path) = &args.out_data {
                    write_output(Some(path), mutated.dataset.to_csv().as_bytes(), stdout)?;
                }
                if let Some(path) = &args.out_codebook {
                    write_output(Some(path), mutated.codebook.to_csv().as_bytes(), stdout)?;
                }
            }
            let report = in_pool(args.data.threads, || {
                run_monotonicity_suite(&loaded.inputs(), &specs, &loaded.weights, &loaded.config)
            })?;
            let text = match format {
                Format::Json => report.to_json() + "\n",
                _ => report.to_text(),
            };
            write_output(args.out.as_deref(), text.as_bytes(), stdout)
        }
        Command::Similarity(args) => {
            let format = parse_format(&args.format, &[Format::Json, Format::Text])?;
            let profile = SimilarityProfile::compute(&args.left, &args.right);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&profile)? + "\n",
                _ => {
                    let mut out = String::new();
                    for s in &profile.scores {
                        out.push_str(&format!("{:<18}{:.6}\n", s.algorithm.id(), s.value));
                    }
                    out.push_str(&format!("{:<18}{:.6}\n", "hybrid", profile.hybrid));
                    out
                }
            };
            write_output(args.out.as_deref(), text.as_bytes(), stdout)
        }
        Command::Label(args) => {
            let format = parse_format(&args.format, &[Format::Json, Format::Text, Format::Html])?;
            let label = QualityLabel::from_json(&read(&args.input)?)?;
            write_output(args.out.as_deref(), &render_label(&label, format), stdout)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn missing_data_flag_is_usage_error() {
        let (code, _, err) = run_capture(&["dqscore", "score"]);
        assert_eq!(code, 2);
        assert!(err.contains("--data"), "{err}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["dqscore", "score", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("--codebook"));
    }

    #[test]
    fn unreadable_file_is_validation_error() {
        let (code, _, err) = run_capture(&["dqscore", "score", "--data", "/nonexistent/x.csv"]);
        assert_eq!(code, 1);
        assert!(err.contains("/nonexistent/x.csv"));
    }

    #[test]
    fn similarity_lists_thirteen_scores() {
        let (code, out, _) = run_capture(&["dqscore", "similarity", "age of respondent", "respondent age in years"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 14);
        assert!(out.lines().last().unwrap().starts_with("hybrid"));
    }

    #[test]
    fn unknown_format_is_usage_error() {
        let (code, _, _) = run_capture(&["dqscore", "similarity", "a", "b", "--format", "pdf"]);
        assert_eq!(code, 2);
    }
}
