//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashSet;

use dqscore::similarity::{CharAlgorithm, TokenList};
use rand::Rng;

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> Vec<char> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(b'a'..=b'e') as char).collect()
}

fn table(rows: usize, cols: usize) -> Vec<Vec<i64>> {
    vec![vec![0; cols + 1]; rows + 1]
}

pub fn oracle_levenshtein(a: &[char], b: &[char]) -> i64 {
    let mut d = table(a.len(), b.len());
    for i in 0..=a.len() {
        d[i][0] = i as i64;
    }
    for j in 0..=b.len() {
        d[0][j] = j as i64;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = if a[i - 1] == b[j - 1] { 0 } else { 1 };
            d[i][j] = (d[i - 1][j - 1] + cost).min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

pub fn oracle_lcs(a: &[char], b: &[char]) -> i64 {
    let mut d = table(a.len(), b.len());
    for i in (0..a.len()).rev() {
        for j in (0..b.len()).rev() {
            d[i][j] = if a[i] == b[j] {
                d[i + 1][j + 1] + 1
            } else {
                d[i + 1][j].max(d[i][j + 1])
            };
        }
    }
    d[0][0]
}

/// Global alignment, +1 match, -1 mismatch, -1 gap.
pub fn oracle_needleman_wunsch(a: &[char], b: &[char]) -> i64 {
    let mut d = table(a.len(), b.len());
    for i in 0..=a.len() {
        d[i][0] = -(i as i64);
    }
    for j in 0..=b.len() {
        d[0][j] = -(j as i64);
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let s = if a[i - 1] == b[j - 1] { 1 } else { -1 };
            d[i][j] = *[d[i - 1][j - 1] + s, d[i - 1][j] - 1, d[i][j - 1] - 1]
                .iter()
                .max()
                .unwrap();
        }
    }
    d[a.len()][b.len()]
}

/// Local alignment, same scoring, floored at zero.
pub fn oracle_smith_waterman(a: &[char], b: &[char]) -> i64 {
    let mut d = table(a.len(), b.len());
    let mut best = 0;
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let s = if a[i - 1] == b[j - 1] { 1 } else { -1 };
            d[i][j] = *[0, d[i - 1][j - 1] + s, d[i - 1][j] - 1, d[i][j - 1] - 1]
                .iter()
                .max()
                .unwrap();
            best = best.max(d[i][j]);
        }
    }
    best
}

/// Normalizations applied to the oracle values above.
pub fn oracle_similarity(alg: CharAlgorithm, a: &[char], b: &[char]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let long = a.len().max(b.len()) as f64;
    let short = a.len().min(b.len()) as f64;
    let s = match alg {
        CharAlgorithm::Levenshtein => 1.0 - oracle_levenshtein(a, b) as f64 / long,
        CharAlgorithm::Lcs => oracle_lcs(a, b) as f64 / long,
        CharAlgorithm::NeedlemanWunsch => (oracle_needleman_wunsch(a, b) as f64 + long) / (long + short),
        CharAlgorithm::SmithWaterman => oracle_smith_waterman(a, b) as f64 / short,
        _ => unreachable!(),
    };
    s.clamp(0.0, 1.0)
}

pub fn random_tokens(rng: &mut impl Rng) -> TokenList {
    let len = rng.gen_range(0..=6);
    (0..len).map(|_| format!("t{}", rng.gen_range(0..8))).collect()
}

pub fn oracle_set(alg: &str, a: &TokenList, b: &TokenList) -> f64 {
    let sa: HashSet<&str> = a.iter().collect();
    let sb: HashSet<&str> = b.iter().collect();
    if sa.is_empty() && sb.is_empty() {
        return 1.0;
    }
    if sa.is_empty() || sb.is_empty() {
        return 0.0;
    }
    let both = sa.iter().filter(|t| sb.contains(*t)).count() as f64;
    let only_a = sa.len() as f64 - both;
    let only_b = sb.len() as f64 - both;
    match alg {
        "jaccard" => both / (both + only_a + only_b),
        "overlap" => both / sa.len().min(sb.len()) as f64,
        "tversky" => both / (both + 0.5 * only_a + 0.5 * only_b),
        _ => unreachable!(),
    }
}

/// First eigenvector of the correlation matrix via a full symmetric
/// eigen-decomposition. Constant columns get loading 0.
pub fn oracle_first_component(rows: &[[f64; 9]]) -> ([f64; 9], f64) {
    let n = rows.len();
    let mut z = nalgebra::DMatrix::<f64>::zeros(n, 9);
    for j in 0..9 {
        let mean = rows.iter().map(|r| r[j]).sum::<f64>() / n as f64;
        let sd = (rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
        if sd > 0.0 {
            for i in 0..n {
                z[(i, j)] = (rows[i][j] - mean) / sd;
            }
        }
    }
    let cov = z.transpose() * &z / (n as f64 - 1.0);
    let eig = nalgebra::SymmetricEigen::new(cov);
    let top = eig.eigenvalues.imax();
    let v = eig.eigenvectors.column(top);
    let mut out = [0.0; 9];
    for j in 0..9 {
        out[j] = v[j];
    }
    (out, eig.eigenvalues[top])
}

pub fn random_training_rows(rng: &mut impl Rng, n: usize) -> Vec<[f64; 9]> {
    (0..n)
        .map(|_| {
            let mut row = [0.0; 9];
            for v in &mut row {
                *v = rng.gen_range(0.0..=100.0);
            }
            row
        })
        .collect()
}

/// Numeric table with `missing_rate` of cells blanked and `duplicates`
/// copies of earlier rows appended, plus a terse codebook.
pub fn impure_fixture(rng: &mut impl Rng, rows: usize, missing_rate: f64, duplicates: usize) -> (String, String) {
    let headers = ["height", "weight", "systolic", "glucose", "clinic"];
    let mut table: Vec<Vec<String>> = (0..rows)
        .map(|_| {
            let mut row: Vec<String> = (0..4)
                .map(|_| {
                    let v: f64 = (0..3).map(|_| rng.gen_range(0.0..1.0)).sum::<f64>();
                    format!("{:.3}", 50.0 + 20.0 * v)
                })
                .collect();
            row.push(format!("c{}", rng.gen_range(0..5)));
            row
        })
        .collect();
    for row in table.iter_mut() {
        for cell in row.iter_mut().take(4) {
            if rng.gen_bool(missing_rate) {
                cell.clear();
            }
        }
    }
    for _ in 0..duplicates {
        let i = rng.gen_range(0..rows);
        table.push(table[i].clone());
    }
    let mut csv = headers.join(",") + "\n";
    for row in &table {
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    let codebook = "column,description,declared_type\n\
        height,ht,continuous\n\
        weight,wt,continuous\n\
        systolic,bp,continuous\n\
        glucose,glu,continuous\n\
        clinic,site,categorical\n"
        .to_string();
    (csv, codebook)
}
