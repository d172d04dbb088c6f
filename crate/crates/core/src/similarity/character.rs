//! Edit-distance and alignment similarities over Unicode scalar values.
//!
//! Every score lies in `[0, 1]`. Two empty strings score 1 and an empty
//! string against a non-empty one scores 0.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharAlgorithm {
    Hamming,
    Levenshtein,
    JaroWinkler,
    NeedlemanWunsch,
    SmithWaterman,
    Lcs,
}

pub const ALIGN_MATCH: i64 = 1;
pub const ALIGN_MISMATCH: i64 = -1;
pub const ALIGN_GAP: i64 = -1;

const WINKLER_PREFIX_SCALE: f64 = 0.1;
const WINKLER_MAX_PREFIX: usize = 4;

pub fn char_similarity(alg: CharAlgorithm, a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    char_similarity_chars(alg, &a, &b)
}

pub(crate) fn char_similarity_chars(alg: CharAlgorithm, a: &[char], b: &[char]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    let longest = a.len().max(b.len()) as f64;
    let shortest = a.len().min(b.len()) as f64;
    let score = match alg {
        CharAlgorithm::Hamming => 1.0 - hamming_distance(a, b) as f64 / longest,
        CharAlgorithm::Levenshtein => 1.0 - levenshtein_distance(a, b) as f64 / longest,
        CharAlgorithm::JaroWinkler => jaro_winkler(a, b),
        CharAlgorithm::NeedlemanWunsch => {
            // optimal global score lies in [-longest, shortest]
            (needleman_wunsch_score(a, b) as f64 + longest) / (longest + shortest)
        }
        CharAlgorithm::SmithWaterman => smith_waterman_score(a, b) as f64 / shortest,
        CharAlgorithm::Lcs => lcs_length(a, b) as f64 / longest,
    };
    score.clamp(0.0, 1.0)
}

/// Positional mismatches, counting the length difference as mismatches.
pub fn hamming_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let positional = a.iter().zip(b).filter(|(x, y)| x != y).count();
    positional + a.len().abs_diff(b.len())
}

pub fn levenshtein_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut curr = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        curr[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let substitution = prev[j] + usize::from(x != y);
            curr[j + 1] = substitution.min(prev[j + 1] + 1).min(curr[j] + 1);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            curr[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(curr[j]) };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Optimal global alignment score with match +1, mismatch -1, gap -1.
pub fn needleman_wunsch_score<T: PartialEq>(a: &[T], b: &[T]) -> i64 {
    let mut prev: Vec<i64> = (0..=b.len() as i64).map(|j| j * ALIGN_GAP).collect();
    let mut curr = vec![0i64; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        curr[0] = (i as i64 + 1) * ALIGN_GAP;
        for (j, y) in b.iter().enumerate() {
            let diagonal = prev[j] + if x == y { ALIGN_MATCH } else { ALIGN_MISMATCH };
            curr[j + 1] = diagonal.max(prev[j + 1] + ALIGN_GAP).max(curr[j] + ALIGN_GAP);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Best local alignment score with match +1, mismatch -1, gap -1.
pub fn smith_waterman_score<T: PartialEq>(a: &[T], b: &[T]) -> i64 {
    let mut prev = vec![0i64; b.len() + 1];
    let mut curr = vec![0i64; b.len() + 1];
    let mut best = 0;
    for x in a {
        for (j, y) in b.iter().enumerate() {
            let diagonal = prev[j] + if x == y { ALIGN_MATCH } else { ALIGN_MISMATCH };
            let cell = diagonal.max(prev[j + 1] + ALIGN_GAP).max(curr[j] + ALIGN_GAP).max(0);
            curr[j + 1] = cell;
            best = best.max(cell);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    best
}

pub fn jaro(a: &[char], b: &[char]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut a_matched = vec![false; a.len()];
    let mut b_matched = vec![false; b.len()];
    let mut matches = 0usize;
    for (i, x) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_matched[j] && b[j] == *x {
                a_matched[i] = true;
                b_matched[j] = true;
                matches += 1;
                break;
            }
        }
    }
    if matches == 0 {
        return 0.0;
    }
    let a_seq = a.iter().zip(&a_matched).filter(|(_, m)| **m).map(|(c, _)| c);
    let b_seq = b.iter().zip(&b_matched).filter(|(_, m)| **m).map(|(c, _)| c);
    let half_transpositions = a_seq.zip(b_seq).filter(|(x, y)| x != y).count();
    let m = matches as f64;
    let t = half_transpositions as f64 / 2.0;
    (m / a.len() as f64 + m / b.len() as f64 + (m - t) / m) / 3.0
}

pub fn jaro_winkler(a: &[char], b: &[char]) -> f64 {
    let j = jaro(a, b);
    let prefix = a
        .iter()
        .zip(b)
        .take(WINKLER_MAX_PREFIX)
        .take_while(|(x, y)| x == y)
        .count();
    j + prefix as f64 * WINKLER_PREFIX_SCALE * (1.0 - j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    #[test]
    fn levenshtein_kitten_sitting() {
        assert_eq!(levenshtein_distance(&chars("kitten"), &chars("sitting")), 3);
        let s = char_similarity(CharAlgorithm::Levenshtein, "kitten", "sitting");
        assert!((s - (1.0 - 3.0 / 7.0)).abs() < 1e-12);
    }

    #[test]
    fn hamming_karolin_kathrin() {
        assert_eq!(hamming_distance(&chars("karolin"), &chars("kathrin")), 3);
        let s = char_similarity(CharAlgorithm::Hamming, "karolin", "kathrin");
        assert!((s - 4.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn hamming_unequal_lengths() {
        assert_eq!(hamming_distance(&chars("abc"), &chars("abcde")), 2);
        let s = char_similarity(CharAlgorithm::Hamming, "abc", "abcde");
        assert!((s - 0.6).abs() < 1e-12);
    }

    #[test]
    fn identity_and_empties() {
        for alg in [
            CharAlgorithm::Hamming,
            CharAlgorithm::Levenshtein,
            CharAlgorithm::JaroWinkler,
            CharAlgorithm::NeedlemanWunsch,
            CharAlgorithm::SmithWaterman,
            CharAlgorithm::Lcs,
        ] {
            assert_eq!(char_similarity(alg, "abc", "abc"), 1.0, "{alg:?}");
            assert_eq!(char_similarity(alg, "", ""), 1.0, "{alg:?}");
            assert_eq!(char_similarity(alg, "", "x"), 0.0, "{alg:?}");
            assert_eq!(char_similarity(alg, "x", ""), 0.0, "{alg:?}");
        }
    }

    #[test]
    fn alignment_scores() {
        // GATTACA vs GCATGCU: a classic optimal global score of 0 under +1/-1/-1
        assert_eq!(needleman_wunsch_score(&chars("GATTACA"), &chars("GCATGCU")), 0);
        assert_eq!(smith_waterman_score(&chars("xxabcxx"), &chars("yabcy")), 3);
        assert_eq!(needleman_wunsch_score(&chars("abc"), &chars("xyz")), -3);
        let s = char_similarity(CharAlgorithm::NeedlemanWunsch, "abc", "xyz");
        assert_eq!(s, 0.0);
    }

    #[test]
    fn lcs_examples() {
        assert_eq!(lcs_length(&chars("ABCBDAB"), &chars("BDCABA")), 4);
        let s = char_similarity(CharAlgorithm::Lcs, "ABCBDAB", "BDCABA");
        assert!((s - 4.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn jaro_winkler_reference_values() {
        // MARTHA/MARHTA: m=6, t=1, jaro=0.9444, prefix 3
        let jw = jaro_winkler(&chars("MARTHA"), &chars("MARHTA"));
        assert!((jw - 0.9611111111111111).abs() < 1e-12, "{jw}");
        let jw = jaro_winkler(&chars("DIXON"), &chars("DICKSONX"));
        assert!((jw - 0.8133333333333332).abs() < 1e-12, "{jw}");
        assert_eq!(jaro(&chars("ab"), &chars("cd")), 0.0);
    }
}
