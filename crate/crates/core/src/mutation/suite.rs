use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{apply_mutation_with, MutationGroup, MutationKind, MutationSpec};
use crate::ingredients::{compute_all, Ingredient, IngredientConfig, IngredientVector, Inputs};
use crate::scoring::{dq_score, WeightVector};
use crate::tabular::Codebook;
use crate::{Error, Result};

/// Ingredient scores closer than this count as unchanged.
const CHANGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

/// How the mutated score compares with the baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Improved,
    Deteriorated,
    Unchanged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngredientChange {
    pub ingredient: Ingredient,
    pub before: Option<f64>,
    pub after: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MutationOutcome {
    pub spec: MutationSpec,
    pub group: MutationGroup,
    pub applied: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub score: f64,
    pub delta: f64,
    pub direction: Direction,
    pub verdict: Verdict,
    pub ingredients: IngredientVector,
    /// Every ingredient whose score moved.
    pub changed: Vec<IngredientChange>,
    /// Changed ingredients other than the mutation's target.
    pub entangled: Vec<Ingredient>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub baseline: f64,
    pub baseline_ingredients: IngredientVector,
    pub outcomes: Vec<MutationOutcome>,
}

impl SuiteReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.outcomes.iter().filter(|o| o.verdict == verdict).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(Verdict::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }

    /// Fixed-width table grouped into baseline, improved and deteriorated
    /// rows.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<32} {:>9} {:>5} {:>8} {:>8}  {:<6} entangled",
            "mutation", "magnitude", "seed", "score", "delta", "verdict"
        );
        let _ = writeln!(
            out,
            "{:<32} {:>9} {:>5} {:>8.2} {:>8}  {:<6}",
            "baseline", "", "", self.baseline, "", ""
        );
        for (title, direction) in [
            ("improved", Direction::Improved),
            ("deteriorated", Direction::Deteriorated),
            ("unchanged", Direction::Unchanged),
        ] {
            let rows: Vec<&MutationOutcome> = self.outcomes.iter().filter(|o| o.direction == direction).collect();
            if rows.is_empty() {
                continue;
            }
            let _ = writeln!(out, "-- {title}");
            for o in rows {
                let entangled: Vec<&str> = o.entangled.iter().map(|i| i.id()).collect();
                let verdict = match o.verdict {
                    Verdict::Pass => "PASS",
                    Verdict::Fail => "FAIL",
                    Verdict::Skip => "SKIP",
                };
                let _ = writeln!(
                    out,
                    "{:<32} {:>9.2} {:>5} {:>8.2} {:>+8.2}  {:<6} {}",
                    o.spec.kind.id(),
                    o.spec.magnitude,
                    o.spec.seed,
                    o.score,
                    o.delta,
                    verdict,
                    entangled.join(",")
                );
            }
        }
        let _ = writeln!(
            out,
            "passed {} failed {} skipped {}",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Skip)
        );
        out
    }
}

/// Parses a JSON array of `{kind, magnitude, seed}` objects.
pub fn parse_specs(bytes: &[u8]) -> Result<Vec<MutationSpec>> {
    let specs: Vec<MutationSpec> = serde_json::from_slice(bytes).map_err(|e| Error::schema("specs", e.to_string()))?;
    for spec in &specs {
        spec.validate()?;
    }
    Ok(specs)
}

fn verdict(kind: MutationKind, applied: bool, score: f64, baseline: f64) -> Verdict {
    if !applied {
        return Verdict::Skip;
    }
    // Row and column removals only apply when the impurity is present, so
    // they must strictly improve. Rewriting descriptions need only not hurt.
    let pass = match kind.group() {
        MutationGroup::Noise => score < baseline,
        MutationGroup::Clean if kind == MutationKind::ImproveMetadata => score >= baseline,
        MutationGroup::Clean => score > baseline,
    };
    if pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Scores the baseline and every mutated variant. Noise mutations pass when
/// the DQ score drops; clean mutations pass when it rises (or, for
/// `improve_metadata`, does not fall). Mutations that change nothing are
/// skipped.
pub fn run_monotonicity_suite(
    inputs: &Inputs<'_>,
    specs: &[MutationSpec],
    weights: &WeightVector,
    config: &IngredientConfig,
) -> Result<SuiteReport> {
    let empty = Codebook::new();
    let codebook = inputs.codebook.unwrap_or(&empty);
    let baseline_assessment = compute_all(inputs, config)?;
    let baseline_ingredients = baseline_assessment.ingredients;
    let baseline = dq_score(&baseline_ingredients, weights)?;

    let outcomes = specs
        .par_iter()
        .map(|spec| {
            let mutated = apply_mutation_with(inputs.dataset, codebook, spec, config)?;
            let mut mutated_inputs = *inputs;
            mutated_inputs.dataset = &mutated.dataset;
            if inputs.codebook.is_some() {
                mutated_inputs.codebook = Some(&mutated.codebook);
            }
            let ingredients = compute_all(&mutated_inputs, config)?.ingredients;
            let score = dq_score(&ingredients, weights)?;
            let changed: Vec<IngredientChange> = Ingredient::ALL
                .into_iter()
                .filter_map(|i| {
                    let (before, after) = (baseline_ingredients.get(i), ingredients.get(i));
                    let same = match (before, after) {
                        (Some(a), Some(b)) => (a - b).abs() <= CHANGE_TOLERANCE,
                        (None, None) => true,
                        _ => false,
                    };
                    (!same).then_some(IngredientChange {
                        ingredient: i,
                        before,
                        after,
                    })
                })
                .collect();
            let target = spec.kind.target();
            let entangled = changed.iter().map(|c| c.ingredient).filter(|i| *i != target).collect();
            let delta = score - baseline;
            let direction = if delta > 0.0 {
                Direction::Improved
            } else if delta < 0.0 {
                Direction::Deteriorated
            } else {
                Direction::Unchanged
            };
            Ok(MutationOutcome {
                spec: *spec,
                group: spec.kind.group(),
                applied: mutated.applied,
                warning: mutated.warning,
                score,
                delta,
                direction,
                verdict: verdict(spec.kind, mutated.applied, score, baseline),
                ingredients,
                changed,
                entangled,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SuiteReport {
        baseline,
        baseline_ingredients,
        outcomes,
    })
}
