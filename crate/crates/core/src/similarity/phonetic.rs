//! Match Rating Approach phonetic comparison.

/// MRA codex: uppercase letters, vowels dropped except a leading one,
/// doubled consonants collapsed, then shortened to the first and last three
/// characters when longer than six.
pub fn mra_codex(word: &str) -> String {
    let letters: Vec<char> = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_uppercase)
        .collect();
    let mut codex: Vec<char> = Vec::with_capacity(letters.len());
    let mut prev: Option<char> = None;
    for (i, &c) in letters.iter().enumerate() {
        if i == 0 || (!matches!(c, 'A' | 'E' | 'I' | 'O' | 'U') && Some(c) != prev) {
            codex.push(c);
        }
        prev = Some(c);
    }
    if codex.len() > 6 {
        codex.drain(3..codex.len() - 3);
    }
    codex.into_iter().collect()
}

fn minimum_rating(length_sum: usize) -> usize {
    match length_sum {
        0..=4 => 5,
        5..=7 => 4,
        8..=11 => 3,
        _ => 2,
    }
}

/// Whether two words pass the MRA similarity test. Words with no letters
/// follow the empty-string convention: both empty pass, one empty fails.
pub fn mra_match(a: &str, b: &str) -> bool {
    let ca: Vec<char> = mra_codex(a).chars().collect();
    let cb: Vec<char> = mra_codex(b).chars().collect();
    match (ca.is_empty(), cb.is_empty()) {
        (true, true) => return true,
        (true, false) | (false, true) => return false,
        _ => {}
    }
    if ca.len().abs_diff(cb.len()) >= 3 {
        return false;
    }
    let minimum = minimum_rating(ca.len() + cb.len());

    // Left to right: drop characters identical at the same position.
    let mut rest_a: Vec<char> = Vec::new();
    let mut rest_b: Vec<char> = Vec::new();
    for i in 0..ca.len().max(cb.len()) {
        let (x, y) = (ca.get(i), cb.get(i));
        if x != y {
            rest_a.extend(x);
            rest_b.extend(y);
        }
    }
    // Right to left over what remains.
    let mut unmatched_a = 0;
    let mut unmatched_b = 0;
    let (ra, rb) = (rest_a.iter().rev(), rest_b.iter().rev());
    let longest = rest_a.len().max(rest_b.len());
    let (mut ra, mut rb) = (ra.fuse(), rb.fuse());
    for _ in 0..longest {
        let (x, y) = (ra.next(), rb.next());
        if x != y {
            unmatched_a += usize::from(x.is_some());
            unmatched_b += usize::from(y.is_some());
        }
    }
    let rating = 6usize.saturating_sub(unmatched_a.max(unmatched_b));
    rating >= minimum
}

fn words(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|w| w.chars().filter(|c| c.is_alphabetic()).collect::<String>())
        .filter(|w| !w.is_empty())
        .collect()
}

/// Word-by-word MRA comparison averaged over the longer word list.
pub fn phonetic_similarity(a: &str, b: &str) -> f64 {
    phonetic_similarity_words(&words(a), &words(b))
}

pub(crate) fn phonetic_similarity_words<S: AsRef<str>>(a: &[S], b: &[S]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    let passes = a
        .iter()
        .zip(b)
        .filter(|(x, y)| mra_match(x.as_ref(), y.as_ref()))
        .count();
    passes as f64 / a.len().max(b.len()) as f64
}
