//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use common::*;
use dqscore::ingredients::{correlation_score, duplicate_score, missing_score, skewness_score, uniformity_score};
use dqscore::mutation::MutationOutcome;
use dqscore::prelude::*;
use dqscore::report::{round_half_up, ReportOptions};
use dqscore::scoring::DEFAULT_LOADINGS;
use dqscore::similarity::{
    char_similarity, feature_similarity, lcs_length, levenshtein_distance, needleman_wunsch_score,
    smith_waterman_score, token_similarity, CharAlgorithm, FeatureAlgorithm, TokenAlgorithm,
};
use dqscore::tabular::{ProvenanceManifest, SourceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> std::result::Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

const PUBLISHED_PERCENTAGES: [f64; 9] = [
    9.703258693,
    16.99435645,
    17.02166394,
    8.565446932,
    7.236482796,
    10.08556344,
    15.49244493,
    8.328782086,
    6.572000728,
];

fn default_weight_reproduction() -> Check {
    let start = Instant::now();
    let weights = loadings_to_weights(&DEFAULT_LOADINGS).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let shifted: f64 = DEFAULT_LOADINGS.iter().map(|l| l + 1.0).sum();
    let worst = weights
        .iter()
        .zip(PUBLISHED_PERCENTAGES)
        .map(|(w, p)| (w - p).abs())
        .fold(0.0, f64::max);
    ensure(worst <= 1e-6, || format!("max deviation {worst:e}"))?;
    ensure((shifted - 10.986).abs() <= 1e-9, || format!("shifted sum {shifted}"))?;
    within(elapsed, Duration::from_millis(1), "weight derivation")?;
    Ok(format!(
        "max deviation {worst:.1e}, shifted sum {shifted:.3}, {elapsed:?}"
    ))
}

fn similarity_oracles() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    for _ in 0..1000 {
        let a = random_word(&mut rng, 8);
        let b = random_word(&mut rng, 8);
        let raw = [
            (levenshtein_distance(&a, &b) as i64, oracle_levenshtein(&a, &b)),
            (lcs_length(&a, &b) as i64, oracle_lcs(&a, &b)),
            (needleman_wunsch_score(&a, &b), oracle_needleman_wunsch(&a, &b)),
            (smith_waterman_score(&a, &b), oracle_smith_waterman(&a, &b)),
        ];
        ensure(raw.iter().all(|(x, y)| x == y), || {
            format!("raw DP mismatch on {a:?} / {b:?}: {raw:?}")
        })?;
        let (sa, sb): (String, String) = (a.iter().collect(), b.iter().collect());
        for alg in [
            CharAlgorithm::Levenshtein,
            CharAlgorithm::Lcs,
            CharAlgorithm::NeedlemanWunsch,
            CharAlgorithm::SmithWaterman,
        ] {
            let (got, want) = (char_similarity(alg, &sa, &sb), oracle_similarity(alg, &a, &b));
            ensure(got == want, || format!("{alg:?} on {sa:?} / {sb:?}: {got} vs {want}"))?;
        }
    }
    for _ in 0..1000 {
        let a = random_tokens(&mut rng);
        let b = random_tokens(&mut rng);
        let pairs = [
            (
                token_similarity(TokenAlgorithm::Jaccard, &a, &b),
                oracle_set("jaccard", &a, &b),
            ),
            (
                feature_similarity(FeatureAlgorithm::Overlap, &a, &b),
                oracle_set("overlap", &a, &b),
            ),
            (
                feature_similarity(FeatureAlgorithm::Tversky, &a, &b),
                oracle_set("tversky", &a, &b),
            ),
        ];
        ensure(pairs.iter().all(|(x, y)| x == y), || {
            format!("set mismatch on {a:?} / {b:?}: {pairs:?}")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10), "oracle comparison")?;
    Ok(format!(
        "1000 string pairs x 4 DP measures, 1000 token-set pairs x 3 set measures, {elapsed:?}"
    ))
}

fn dataset(csv: &str) -> Dataset {
    parse_dataset(csv.as_bytes(), &ParseOptions::default()).expect("fixture parses")
}

fn ingredient_fixtures() -> Check {
    let mut notes = Vec::new();

    // 25 of 100 cells missing
    let mut csv = String::from("a,b,c,d\n");
    for i in 0..25 {
        let cells: Vec<String> = (0..4)
            .map(|j| {
                if (i + j) % 4 == 0 {
                    String::new()
                } else {
                    format!("{}", i * 4 + j)
                }
            })
            .collect();
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }
    let (s, _) = missing_score(&dataset(&csv)).map_err(|e| e.to_string())?;
    ensure(s == 75.0, || format!("25% missing scored {s}"))?;
    notes.push(format!("missing {s}"));

    // 10 rows, 2 of them exact copies
    let mut csv = String::from("x,y\n");
    for i in 0..8 {
        csv.push_str(&format!("{i},{}\n", i * 3));
    }
    csv.push_str("2,6\n5,15\n");
    let (s, _) = duplicate_score(&dataset(&csv)).map_err(|e| e.to_string())?;
    ensure(s == 80.0, || format!("2-of-10 duplicates scored {s}"))?;
    notes.push(format!("duplicates {s}"));

    // continuous column of ten cells, text cells mixed in
    let codebook = parse_codebook(b"column,description,declared_type\nv,value,continuous\n").unwrap();
    let column = |text: usize| {
        let cells: Vec<String> = (0..10)
            .map(|i| if i < text { format!("txt{i}") } else { i.to_string() })
            .collect();
        format!("v\n{}\n", cells.join("\n"))
    };
    let (two, _) = uniformity_score(&dataset(&column(2)), &codebook).map_err(|e| e.to_string())?;
    let (one, _) = uniformity_score(&dataset(&column(1)), &codebook).map_err(|e| e.to_string())?;
    ensure(two == 80.0, || format!("two text cells in ten scored {two}"))?;
    ensure(one == 90.0, || format!("one text cell in ten scored {one}"))?;
    notes.push(format!("uniformity {two} (2/10 text), {one} (1/10 text)"));

    // y = x
    let mut csv = String::from("x,y\n");
    for i in 0..20 {
        csv.push_str(&format!("{i},{i}\n"));
    }
    let (s, _) = correlation_score(&dataset(&csv), &IngredientConfig::default()).map_err(|e| e.to_string())?;
    ensure(s == 0.0, || format!("y = x scored {s}"))?;
    notes.push(format!("correlation {s}"));

    // symmetric column
    let (_, detail) =
        skewness_score(&dataset("v\n1\n2\n3\n4\n5\n"), &IngredientConfig::default()).map_err(|e| e.to_string())?;
    let column_score = detail.columns[0].score;
    ensure(column_score == 1.0, || {
        format!("[1..5] column skew score {column_score}")
    })?;
    notes.push(format!("skew column score {column_score}"));

    Ok(notes.join(", "))
}

struct Suite {
    baseline: f64,
    outcomes: Vec<MutationOutcome>,
}

fn run_suite(csv: &str, codebook: &str, specs: &[MutationSpec]) -> std::result::Result<Suite, String> {
    let ds = dataset(csv);
    let cb = parse_codebook(codebook.as_bytes()).map_err(|e| e.to_string())?;
    let inputs = Inputs::new(&ds).with_codebook(&cb);
    let report = run_monotonicity_suite(&inputs, specs, &WeightVector::published(), &IngredientConfig::default())
        .map_err(|e| e.to_string())?;
    Ok(Suite {
        baseline: report.baseline,
        outcomes: report.outcomes,
    })
}

fn mutation_monotonicity() -> Check {
    let magnitudes = [0.05, 0.10, 0.20];
    let mut lines = Vec::new();
    for fixture_seed in [101u64, 202, 303] {
        let mut rng = ChaCha8Rng::seed_from_u64(fixture_seed);
        let (csv, codebook) = impure_fixture(&mut rng, 1000, 0.03, 30);
        let mut specs = Vec::new();
        for kind in [MutationKind::InjectMissing, MutationKind::InjectDuplicates] {
            specs.extend(magnitudes.iter().map(|&m| MutationSpec::new(kind, m, fixture_seed)));
        }
        for kind in [
            MutationKind::Deduplicate,
            MutationKind::RemoveMissingRows,
            MutationKind::ImproveMetadata,
        ] {
            specs.push(MutationSpec::new(kind, 1.0, fixture_seed));
        }
        let suite = run_suite(&csv, &codebook, &specs)?;
        let scores: Vec<f64> = suite.outcomes.iter().map(|o| o.score).collect();
        let base = suite.baseline;
        let decreasing = |s: &[f64]| base > s[0] && s[0] > s[1] && s[1] > s[2];
        ensure(decreasing(&scores[0..3]), || {
            format!("fixture {fixture_seed}: inject_missing {base} -> {:?}", &scores[0..3])
        })?;
        ensure(decreasing(&scores[3..6]), || {
            format!(
                "fixture {fixture_seed}: inject_duplicates {base} -> {:?}",
                &scores[3..6]
            )
        })?;
        ensure(scores[6] > base, || {
            format!("fixture {fixture_seed}: deduplicate {base} -> {}", scores[6])
        })?;
        ensure(scores[7] > base, || {
            format!("fixture {fixture_seed}: remove_missing_rows {base} -> {}", scores[7])
        })?;
        ensure(scores[8] >= base, || {
            format!("fixture {fixture_seed}: improve_metadata {base} -> {}", scores[8])
        })?;
        lines.push(format!("fixture {fixture_seed}: baseline {base:.3}"));
    }
    Ok(format!("{} fixtures; {}", lines.len(), lines.join("; ")))
}

fn pca_refit() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let rows = random_training_rows(&mut rng, 50);
        let (expected, _) = oracle_first_component(&rows);
        let training = TrainingMatrix::new(rows).map_err(|e| e.to_string())?;
        let (weights, loadings) = refit_weights(&training).map_err(|e| e.to_string())?;
        let got = loadings.values();
        let same = got
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let flipped = got
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a + b).abs())
            .fold(0.0, f64::max);
        let error = same.min(flipped);
        worst = worst.max(error);
        ensure(error < 1e-8, || format!("trial {trial}: loadings differ by {error:e}"))?;
        let total: f64 = weights.values().iter().sum();
        ensure((total - 100.0).abs() < 1e-9, || {
            format!("trial {trial}: weights sum to {total}")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5), "100 refits")?;
    Ok(format!("100 matrices, worst loading error {worst:.1e}, {elapsed:?}"))
}

fn perfect_dataset() -> Check {
    let today = NaiveDate::from_ymd_opt(2026, 10, 16).unwrap();
    let mut csv = String::from("height,weight,clinic\n");
    for i in 1..=40u64 {
        // weight is a permutation of 1..=40, so both columns hold the same
        // symmetric set of values
        csv.push_str(&format!("{i},{},clinic{}\n", (i * 17) % 41, i % 4));
    }
    let ds = dataset(&csv);
    let codebook = parse_codebook(
        b"column,description,declared_type\nheight,height,continuous\nweight,weight,continuous\nclinic,clinic,categorical\n",
    )
    .map_err(|e| e.to_string())?;
    let manifest = ProvenanceManifest {
        source_kind: SourceKind::Government,
        usage_count: 0,
        author: Some("Statistics Bureau".to_string()),
        last_updated: today,
        open_format: true,
        license_present: true,
        preprocessing_documented: true,
    };
    let reference = ReferenceStats::from_dataset(&ds);
    let inputs = Inputs::new(&ds)
        .with_codebook(&codebook)
        .with_manifest(&manifest)
        .with_reference(&reference)
        .on(today);
    let assessment = compute_all(&inputs, &IngredientConfig::default()).map_err(|e| e.to_string())?;
    for ingredient in Ingredient::ALL {
        let score = assessment.ingredients.get(ingredient);
        let shown = score.map(|s| round_half_up(s, 2));
        ensure(shown.as_deref() == Some("100.00"), || {
            format!("{} scored {score:?}", ingredient.id())
        })?;
    }
    let dq = dq_score(&assessment.ingredients, &WeightVector::published()).map_err(|e| e.to_string())?;
    ensure(round_half_up(dq, 2) == "100.00", || format!("DQ {dq}"))?;
    Ok(format!("all nine ingredients 100.00, DQ {}", round_half_up(dq, 2)))
}

fn example_path(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn score_json(threads: usize) -> std::result::Result<Vec<u8>, String> {
    let args = vec![
        "dqscore".to_string(),
        "score".to_string(),
        "--data".to_string(),
        example_path("survey.csv"),
        "--codebook".to_string(),
        example_path("survey_codebook.csv"),
        "--manifest".to_string(),
        example_path("survey_manifest.json"),
        "--reference".to_string(),
        example_path("survey_reference.json"),
        "--today".to_string(),
        "2026-10-16".to_string(),
        "--threads".to_string(),
        threads.to_string(),
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dqscore::cli::run_with(args, &mut out, &mut err);
    ensure(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&err)))?;
    Ok(out)
}

fn determinism() -> Check {
    let first = score_json(1)?;
    let second = score_json(1)?;
    let parallel = score_json(8)?;
    ensure(first == second, || "two single-threaded runs differ".to_string())?;
    ensure(first == parallel, || "1-thread and 8-thread runs differ".to_string())?;
    let ds = {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        synthetic_csv(&mut rng, 2_000, 30)
    };
    let parsed = dataset(&ds);
    let mut outputs = Vec::new();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let json = pool.install(|| {
            let assessment = compute_all(&Inputs::new(&parsed), &IngredientConfig::default()).unwrap();
            ComprehensiveReport::build(
                &parsed,
                &assessment,
                &WeightVector::published(),
                &ReportOptions::default(),
            )
            .unwrap()
            .to_json()
        });
        outputs.push(json);
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
        "2000x30 report differs across thread counts".to_string()
    })?;
    Ok(format!(
        "score JSON {} bytes identical across runs and 1/8 threads",
        first.len()
    ))
}

fn synthetic_csv(rng: &mut impl Rng, rows: usize, columns: usize) -> String {
    let mut csv = String::with_capacity(rows * columns * 8);
    let headers: Vec<String> = (0..columns).map(|j| format!("v{j}")).collect();
    csv.push_str(&headers.join(","));
    csv.push('\n');
    for _ in 0..rows {
        for j in 0..columns {
            if j > 0 {
                csv.push(',');
            }
            if rng.gen_bool(0.001) {
                continue;
            }
            let _ = write!(csv, "{:.3}", rng.gen_range(0.0..1000.0));
        }
        csv.push('\n');
    }
    csv
}

fn desk_scale() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(100_000);
    let csv = synthetic_csv(&mut rng, 100_000, 100);
    let start = Instant::now();
    let ds = parse_dataset(csv.as_bytes(), &ParseOptions::named("synthetic")).map_err(|e| e.to_string())?;
    let assessment = compute_all(&Inputs::new(&ds), &IngredientConfig::default()).map_err(|e| e.to_string())?;
    let report = ComprehensiveReport::build(&ds, &assessment, &WeightVector::published(), &ReportOptions::default())
        .map_err(|e| e.to_string())?;
    let json = render_report(&report, Format::Json);
    let elapsed = start.elapsed();
    let pairs = assessment.evidence.un_correlation.as_ref().map_or(0, |c| c.pairs.len());
    ensure(pairs == 4950, || format!("{pairs} correlation pairs"))?;
    within(elapsed, Duration::from_secs(60), "scoring 100000x100")?;
    Ok(format!(
        "{} MB CSV, {pairs} pairs, {} byte report, {elapsed:.2?}",
        csv.len() / 1_000_000,
        json.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("default weight reproduction", default_weight_reproduction),
        ("similarity oracle equivalence", similarity_oracles),
        ("ingredient unit fixtures", ingredient_fixtures),
        ("mutation monotonicity", mutation_monotonicity),
        ("PCA refit oracle", pca_refit),
        ("perfect-dataset identity", perfect_dataset),
        ("determinism", determinism),
        ("desk-scale performance", desk_scale),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {} {name}: {reason}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
