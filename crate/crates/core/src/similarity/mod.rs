//! Text similarity between column names and their descriptions.
//!
//! Thirteen algorithms in four families (character, token, feature and
//! phonetic) each produce a score in `[0, 1]`. The hybrid score is their
//! unweighted mean and measures how well a codebook description matches its
//! column name.

mod character;
mod phonetic;
mod porter;
mod preprocess;
mod token;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use character::{
    char_similarity, hamming_distance, jaro, jaro_winkler, lcs_length, levenshtein_distance, needleman_wunsch_score,
    smith_waterman_score, CharAlgorithm, ALIGN_GAP, ALIGN_MATCH, ALIGN_MISMATCH,
};
pub use phonetic::{mra_codex, mra_match, phonetic_similarity};
pub use porter::stem;
pub use preprocess::{preprocess, stopwords, TokenList};
pub use token::{feature_similarity, token_similarity, FeatureAlgorithm, TokenAlgorithm, TVERSKY_ALPHA, TVERSKY_BETA};

use crate::{Error, Result};

/// The thirteen algorithms, in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Hamming,
    Levenshtein,
    JaroWinkler,
    NeedlemanWunsch,
    SmithWaterman,
    Lcs,
    Jaccard,
    Cosine,
    Manhattan,
    Tanimoto,
    Tversky,
    Overlap,
    MatchRating,
}

impl Algorithm {
    pub const ALL: [Algorithm; 13] = [
        Algorithm::Hamming,
        Algorithm::Levenshtein,
        Algorithm::JaroWinkler,
        Algorithm::NeedlemanWunsch,
        Algorithm::SmithWaterman,
        Algorithm::Lcs,
        Algorithm::Jaccard,
        Algorithm::Cosine,
        Algorithm::Manhattan,
        Algorithm::Tanimoto,
        Algorithm::Tversky,
        Algorithm::Overlap,
        Algorithm::MatchRating,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Hamming => "hamming",
            Algorithm::Levenshtein => "levenshtein",
            Algorithm::JaroWinkler => "jaro_winkler",
            Algorithm::NeedlemanWunsch => "needleman_wunsch",
            Algorithm::SmithWaterman => "smith_waterman",
            Algorithm::Lcs => "lcs",
            Algorithm::Jaccard => "jaccard",
            Algorithm::Cosine => "cosine",
            Algorithm::Manhattan => "manhattan",
            Algorithm::Tanimoto => "tanimoto",
            Algorithm::Tversky => "tversky",
            Algorithm::Overlap => "overlap",
            Algorithm::MatchRating => "match_rating",
        }
    }

    /// Scores two already-preprocessed inputs.
    pub fn score(self, a: &TokenList, b: &TokenList) -> f64 {
        let char_alg = match self {
            Algorithm::Hamming => Some(CharAlgorithm::Hamming),
            Algorithm::Levenshtein => Some(CharAlgorithm::Levenshtein),
            Algorithm::JaroWinkler => Some(CharAlgorithm::JaroWinkler),
            Algorithm::NeedlemanWunsch => Some(CharAlgorithm::NeedlemanWunsch),
            Algorithm::SmithWaterman => Some(CharAlgorithm::SmithWaterman),
            Algorithm::Lcs => Some(CharAlgorithm::Lcs),
            _ => None,
        };
        if let Some(alg) = char_alg {
            return char_similarity(alg, &a.joined(), &b.joined());
        }
        match self {
            Algorithm::Jaccard => token_similarity(TokenAlgorithm::Jaccard, a, b),
            Algorithm::Cosine => token_similarity(TokenAlgorithm::Cosine, a, b),
            Algorithm::Manhattan => token_similarity(TokenAlgorithm::Manhattan, a, b),
            Algorithm::Tanimoto => token_similarity(TokenAlgorithm::Tanimoto, a, b),
            Algorithm::Tversky => feature_similarity(FeatureAlgorithm::Tversky, a, b),
            Algorithm::Overlap => feature_similarity(FeatureAlgorithm::Overlap, a, b),
            Algorithm::MatchRating => phonetic::phonetic_similarity_words(a.tokens(), b.tokens()),
            _ => unreachable!("character algorithms handled above"),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::Usage(format!("unknown similarity algorithm {s:?}")))
    }
}

/// A score in `[0, 1]` tagged with the algorithm that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityScore {
    pub algorithm: Algorithm,
    pub value: f64,
}

/// All thirteen scores for a pair of texts plus their hybrid mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityProfile {
    pub left: TokenList,
    pub right: TokenList,
    pub scores: Vec<SimilarityScore>,
    pub hybrid: f64,
}

impl SimilarityProfile {
    /// Preprocesses both texts and evaluates every algorithm. An empty
    /// right-hand text (the description) forces a hybrid score of 0.
    pub fn compute(left: &str, right: &str) -> Self {
        let (a, b) = (preprocess(left), preprocess(right));
        let scores: Vec<SimilarityScore> = Algorithm::ALL
            .into_iter()
            .map(|algorithm| SimilarityScore {
                algorithm,
                value: algorithm.score(&a, &b),
            })
            .collect();
        let hybrid = if right.trim().is_empty() {
            0.0
        } else {
            scores.iter().map(|s| s.value).sum::<f64>() / scores.len() as f64
        };
        SimilarityProfile {
            left: a,
            right: b,
            scores,
            hybrid,
        }
    }

    pub fn get(&self, algorithm: Algorithm) -> f64 {
        self.scores
            .iter()
            .find(|s| s.algorithm == algorithm)
            .map_or(0.0, |s| s.value)
    }
}

/// Mean of the thirteen similarity scores between a column name and its
/// description; 0 when the description is empty.
pub fn hybrid_score(column_name: &str, description: &str) -> f64 {
    SimilarityProfile::compute(column_name, description).hybrid
}
