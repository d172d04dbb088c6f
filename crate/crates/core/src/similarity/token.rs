//! Token- and feature-based similarities over preprocessed token lists.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::preprocess::TokenList;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenAlgorithm {
    Jaccard,
    Cosine,
    Manhattan,
    Tanimoto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureAlgorithm {
    Tversky,
    Overlap,
}

/// Tversky weights; equal weights keep the index symmetric.
pub const TVERSKY_ALPHA: f64 = 0.5;
pub const TVERSKY_BETA: f64 = 0.5;

fn empty_rule(a: &TokenList, b: &TokenList) -> Option<f64> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Some(1.0),
        (true, false) | (false, true) => Some(0.0),
        _ => None,
    }
}

fn token_set(list: &TokenList) -> BTreeSet<&str> {
    list.iter().collect()
}

/// Term-frequency pairs over the union vocabulary.
fn term_frequencies<'a>(a: &'a TokenList, b: &'a TokenList) -> Vec<(f64, f64)> {
    let mut tf: BTreeMap<&str, (f64, f64)> = BTreeMap::new();
    for t in a.iter() {
        tf.entry(t).or_default().0 += 1.0;
    }
    for t in b.iter() {
        tf.entry(t).or_default().1 += 1.0;
    }
    tf.into_values().collect()
}

pub fn token_similarity(alg: TokenAlgorithm, a: &TokenList, b: &TokenList) -> f64 {
    if let Some(s) = empty_rule(a, b) {
        return s;
    }
    let score = match alg {
        TokenAlgorithm::Jaccard => {
            let (sa, sb) = (token_set(a), token_set(b));
            let shared = sa.intersection(&sb).count() as f64;
            shared / sa.union(&sb).count() as f64
        }
        TokenAlgorithm::Cosine => {
            let tf = term_frequencies(a, b);
            let dot: f64 = tf.iter().map(|(x, y)| x * y).sum();
            let na: f64 = tf.iter().map(|(x, _)| x * x).sum();
            let nb: f64 = tf.iter().map(|(_, y)| y * y).sum();
            dot / (na * nb).sqrt()
        }
        TokenAlgorithm::Manhattan => {
            let tf = term_frequencies(a, b);
            let distance: f64 = tf.iter().map(|(x, y)| (x - y).abs()).sum();
            1.0 - distance / (a.len() + b.len()) as f64
        }
        TokenAlgorithm::Tanimoto => {
            let tf = term_frequencies(a, b);
            let dot: f64 = tf.iter().map(|(x, y)| x * y).sum();
            let na: f64 = tf.iter().map(|(x, _)| x * x).sum();
            let nb: f64 = tf.iter().map(|(_, y)| y * y).sum();
            dot / (na + nb - dot)
        }
    };
    score.clamp(0.0, 1.0)
}

pub fn feature_similarity(alg: FeatureAlgorithm, a: &TokenList, b: &TokenList) -> f64 {
    if let Some(s) = empty_rule(a, b) {
        return s;
    }
    let (sa, sb) = (token_set(a), token_set(b));
    let shared = sa.intersection(&sb).count() as f64;
    let score = match alg {
        FeatureAlgorithm::Tversky => {
            let only_a = sa.difference(&sb).count() as f64;
            let only_b = sb.difference(&sa).count() as f64;
            shared / (shared + TVERSKY_ALPHA * only_a + TVERSKY_BETA * only_b)
        }
        FeatureAlgorithm::Overlap => shared / sa.len().min(sb.len()) as f64,
    };
    score.clamp(0.0, 1.0)
}
