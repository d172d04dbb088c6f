use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MutationKind, MutationSpec};
use crate::ingredients::{correlation_score, find_duplicates, IngredientConfig};
use crate::similarity::preprocess;
use crate::tabular::{column_stats, Codebook, Dataset};
use crate::Result;

/// Replacement written by `corrupt_cell_types`.
pub const CORRUPT_TOKEN: &str = "corrupt";

/// Result of a mutation.
#[derive(Debug, Clone, PartialEq)]
pub struct Mutated {
    pub dataset: Dataset,
    pub codebook: Codebook,
    /// False when the mutation changed nothing.
    pub applied: bool,
    /// Units changed (cells, rows, columns or descriptions by kind).
    pub changes: usize,
    pub warning: Option<String>,
}

impl Mutated {
    fn unchanged(dataset: &Dataset, codebook: &Codebook, warning: Option<String>) -> Self {
        Mutated {
            dataset: dataset.clone(),
            codebook: codebook.clone(),
            applied: false,
            changes: 0,
            warning,
        }
    }
}

/// `floor(magnitude * available)`, robust to representation error in the
/// product (0.1 * 100 must give 10).
fn amount(magnitude: f64, available: usize) -> usize {
    ((magnitude * available as f64 + 1e-9).floor() as usize).min(available)
}

/// Picks `k` of `n` indices uniformly without replacement, ascending.
fn choose(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut picked = sample(rng, n, k).into_vec();
    picked.sort_unstable();
    picked
}

fn format_number(x: f64) -> String {
    format!("{x}")
}

pub fn apply_mutation(dataset: &Dataset, codebook: &Codebook, spec: &MutationSpec) -> Result<Mutated> {
    apply_mutation_with(dataset, codebook, spec, &IngredientConfig::default())
}

/// Applies `spec`; `config` supplies the correlation threshold used by
/// `drop_high_correlation_columns`.
pub fn apply_mutation_with(
    dataset: &Dataset,
    codebook: &Codebook,
    spec: &MutationSpec,
    config: &IngredientConfig,
) -> Result<Mutated> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let m = spec.magnitude;
    match spec.kind {
        MutationKind::InjectMissing => inject_missing(dataset, codebook, m, &mut rng),
        MutationKind::InjectDuplicates => inject_duplicates(dataset, codebook, m, &mut rng),
        MutationKind::InjectCorrelatedColumn => inject_correlated_column(dataset, codebook, m, &mut rng),
        MutationKind::InjectSkew => inject_skew(dataset, codebook, m, &mut rng),
        MutationKind::DegradeMetadata => degrade_metadata(dataset, codebook, m, &mut rng),
        MutationKind::CorruptCellTypes => corrupt_cell_types(dataset, codebook, m, &mut rng),
        MutationKind::RemoveMissingRows => remove_missing_rows(dataset, codebook, m, &mut rng),
        MutationKind::Deduplicate => deduplicate(dataset, codebook, m, &mut rng),
        MutationKind::DropHighCorrelationColumns => drop_correlated(dataset, codebook, m, config),
        MutationKind::ImproveMetadata => improve_metadata(dataset, codebook, m, &mut rng),
    }
}

fn no_material(dataset: &Dataset, codebook: &Codebook, what: &str) -> Result<Mutated> {
    Ok(Mutated::unchanged(
        dataset,
        codebook,
        Some(format!("no {what} to mutate")),
    ))
}

/// Overwrites the chosen `(row, column)` cells with `value`.
fn overwrite_cells(dataset: &Dataset, cells: &[(usize, usize)], value: &str) -> Result<Dataset> {
    let (headers, mut rows) = dataset.to_rows();
    for &(r, c) in cells {
        rows[r][c] = value.to_string();
    }
    dataset.rebuild(&headers, &rows)
}

fn finish(dataset: Dataset, codebook: Codebook, changes: usize, warning: Option<String>) -> Result<Mutated> {
    Ok(Mutated {
        dataset,
        codebook,
        applied: changes > 0,
        changes,
        warning,
    })
}

fn inject_missing(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    let wanted = amount(m, ds.cell_count());
    if wanted == 0 {
        return Ok(Mutated::unchanged(ds, cb, None));
    }
    let candidates: Vec<(usize, usize)> = (0..ds.row_count())
        .flat_map(|r| (0..ds.column_count()).map(move |c| (r, c)))
        .filter(|&(r, c)| !ds.column(c).kind(r).is_missing())
        .collect();
    if candidates.is_empty() {
        return no_material(ds, cb, "non-missing cells");
    }
    let k = wanted.min(candidates.len());
    let warning = (k < wanted).then(|| format!("only {k} non-missing cells available, {wanted} requested"));
    let picked: Vec<(usize, usize)> = choose(rng, candidates.len(), k)
        .into_iter()
        .map(|i| candidates[i])
        .collect();
    finish(overwrite_cells(ds, &picked, "")?, cb.clone(), k, warning)
}

fn inject_duplicates(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    let k = amount(m, ds.row_count());
    if k == 0 {
        return Ok(Mutated::unchanged(ds, cb, None));
    }
    let (headers, mut rows) = ds.to_rows();
    let n = rows.len();
    for _ in 0..k {
        let source = rng.gen_range(0..n);
        rows.push(rows[source].clone());
    }
    finish(ds.rebuild(&headers, &rows)?, cb.clone(), k, None)
}

fn numeric_columns(ds: &Dataset) -> Vec<usize> {
    (0..ds.column_count()).filter(|&c| ds.column(c).is_numeric()).collect()
}

fn unique_name(ds: &Dataset, cb: &Codebook, base: &str) -> String {
    let taken = |n: &str| ds.column_index(n).is_some() || cb.get(n).is_some();
    if !taken(base) {
        return base.to_string();
    }
    (2..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !taken(n))
        .expect("unbounded suffixes")
}

fn inject_correlated_column(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    let numeric = numeric_columns(ds);
    if numeric.is_empty() {
        return no_material(ds, cb, "numeric columns");
    }
    let source = numeric[rng.gen_range(0..numeric.len())];
    let column = ds.column(source);
    let std_dev = column_stats(column)?.std_dev;
    let amplitude = (1.0 - m) * std_dev;
    let name = unique_name(ds, cb, &format!("{}_corr", column.name()));
    let values = column.numeric_values();
    let (mut headers, mut rows) = ds.to_rows();
    headers.push(name.clone());
    for (r, row) in rows.iter_mut().enumerate() {
        let cell = match values[r] {
            Some(x) if amplitude > 0.0 => format_number(x + rng.gen_range(-amplitude..=amplitude)),
            _ => column.cell(r).to_string(),
        };
        row.push(cell);
    }
    let mut codebook = cb.clone();
    if let Some(entry) = cb.get(column.name()) {
        codebook.insert(name, entry.description.clone(), entry.declared_type)?;
    }
    finish(ds.rebuild(&headers, &rows)?, codebook, 1, None)
}

fn inject_skew(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    if m == 0.0 {
        return Ok(Mutated::unchanged(ds, cb, None));
    }
    let candidates: Vec<usize> = numeric_columns(ds)
        .into_iter()
        .filter(|&c| column_stats(ds.column(c)).is_ok_and(|s| s.max > s.min))
        .collect();
    if candidates.is_empty() {
        return no_material(ds, cb, "non-constant numeric columns");
    }
    let target = candidates[rng.gen_range(0..candidates.len())];
    let column = ds.column(target);
    let stats = column_stats(column)?;
    let range = stats.max - stats.min;
    let exponent = 1.0 + 4.0 * m;
    let values = column.numeric_values();
    let (headers, mut rows) = ds.to_rows();
    for (r, row) in rows.iter_mut().enumerate() {
        if let Some(x) = values[r] {
            let u = (x - stats.min) / range;
            row[target] = format_number(stats.min + range * u.powf(exponent));
        }
    }
    finish(ds.rebuild(&headers, &rows)?, cb.clone(), 1, None)
}

fn degrade_metadata(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    let k = amount(m, cb.len());
    if k == 0 {
        return Ok(Mutated::unchanged(ds, cb, None));
    }
    let candidates: Vec<String> = cb
        .entries()
        .filter(|(_, e)| e.description.split_whitespace().nth(1).is_some())
        .map(|(name, _)| name.to_string())
        .collect();
    if candidates.is_empty() {
        return no_material(ds, cb, "multi-word descriptions");
    }
    let k = k.min(candidates.len());
    let mut codebook = cb.clone();
    for i in choose(rng, candidates.len(), k) {
        let entry = codebook.get_mut(&candidates[i]).expect("candidate exists");
        entry.description = entry.description.split_whitespace().next().unwrap_or("").to_string();
    }
    finish(ds.clone(), codebook, k, None)
}

fn corrupt_cell_types(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    let candidates: Vec<(usize, usize)> = (0..ds.row_count())
        .flat_map(|r| (0..ds.column_count()).map(move |c| (r, c)))
        .filter(|&(r, c)| ds.column(c).kind(r).is_numeric())
        .collect();
    let k = amount(m, candidates.len());
    if k == 0 {
        return if candidates.is_empty() && m > 0.0 {
            no_material(ds, cb, "numeric cells")
        } else {
            Ok(Mutated::unchanged(ds, cb, None))
        };
    }
    let picked: Vec<(usize, usize)> = choose(rng, candidates.len(), k)
        .into_iter()
        .map(|i| candidates[i])
        .collect();
    finish(overwrite_cells(ds, &picked, CORRUPT_TOKEN)?, cb.clone(), k, None)
}

fn drop_rows(ds: &Dataset, remove: &HashSet<usize>) -> Result<Dataset> {
    let (headers, rows) = ds.to_rows();
    let kept: Vec<Vec<String>> = rows
        .into_iter()
        .enumerate()
        .filter(|(r, _)| !remove.contains(r))
        .map(|(_, row)| row)
        .collect();
    ds.rebuild(&headers, &kept)
}

fn remove_missing_rows(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    let affected: Vec<usize> = (0..ds.row_count())
        .filter(|&r| ds.columns().iter().any(|c| c.kind(r).is_missing()))
        .collect();
    if affected.is_empty() {
        return no_material(ds, cb, "rows with missing cells");
    }
    let k = amount(m, affected.len());
    if k == 0 {
        return Ok(Mutated::unchanged(ds, cb, None));
    }
    let remove: HashSet<usize> = choose(rng, affected.len(), k)
        .into_iter()
        .map(|i| affected[i])
        .collect();
    finish(drop_rows(ds, &remove)?, cb.clone(), k, None)
}

fn deduplicate(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    let duplicates = find_duplicates(ds);
    if duplicates.is_empty() {
        return no_material(ds, cb, "duplicate rows");
    }
    let k = amount(m, duplicates.len());
    if k == 0 {
        return Ok(Mutated::unchanged(ds, cb, None));
    }
    let remove: HashSet<usize> = choose(rng, duplicates.len(), k)
        .into_iter()
        .map(|i| duplicates[i].row)
        .collect();
    finish(drop_rows(ds, &remove)?, cb.clone(), k, None)
}

/// Walks the high pairs from strongest to weakest and drops the second
/// column of every pair whose columns are both still present.
fn drop_correlated(ds: &Dataset, cb: &Codebook, m: f64, config: &IngredientConfig) -> Result<Mutated> {
    let Ok((_, detail)) = correlation_score(ds, config) else {
        return no_material(ds, cb, "numeric column pairs");
    };
    let mut dropped: Vec<String> = Vec::new();
    for pair in detail.pairs.iter().filter(|p| p.high) {
        if !dropped.contains(&pair.left) && !dropped.contains(&pair.right) {
            dropped.push(pair.right.clone());
        }
    }
    if dropped.is_empty() {
        return no_material(ds, cb, "highly correlated pairs");
    }
    let k = amount(m, dropped.len());
    if k == 0 {
        return Ok(Mutated::unchanged(ds, cb, None));
    }
    dropped.truncate(k);
    let keep: Vec<usize> = (0..ds.column_count())
        .filter(|&c| !dropped.iter().any(|d| d == ds.column(c).name()))
        .collect();
    let (headers, rows) = ds.to_rows();
    let headers: Vec<String> = keep.iter().map(|&c| headers[c].clone()).collect();
    let rows: Vec<Vec<String>> = rows
        .into_iter()
        .map(|row| keep.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let mut codebook = cb.clone();
    for name in &dropped {
        codebook.remove(name);
    }
    finish(ds.rebuild(&headers, &rows)?, codebook, k, None)
}

fn improve_metadata(ds: &Dataset, cb: &Codebook, m: f64, rng: &mut ChaCha8Rng) -> Result<Mutated> {
    let candidates: Vec<String> = cb
        .entries()
        .filter(|(name, e)| {
            let name_tokens = preprocess(name);
            !name_tokens.is_empty() && preprocess(&e.description) != name_tokens
        })
        .map(|(name, _)| name.to_string())
        .collect();
    if candidates.is_empty() {
        return no_material(ds, cb, "descriptions to improve");
    }
    let k = amount(m, candidates.len());
    if k == 0 {
        return Ok(Mutated::unchanged(ds, cb, None));
    }
    let mut codebook = cb.clone();
    for i in choose(rng, candidates.len(), k) {
        let name = &candidates[i];
        let entry = codebook.get_mut(name).expect("candidate exists");
        entry.description = format!("{name} {}", entry.description).trim().to_string();
    }
    finish(ds.clone(), codebook, k, None)
}
