//! n-gram overlap scores: symmetric overlap, ROUGE-n, and the
//! unigram + skip-bigram variant (ROUGE-SU).

use thiserror::Error;

use crate::textproc::{extract_ngrams, NGramMultiset, TextError, Unit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NgramError {
    #[error("n-gram multisets differ in n, skip or unit")]
    MismatchedGramConfig,
    #[error("reference has no n-grams")]
    EmptyReference,
    #[error(transparent)]
    Text(#[from] TextError),
}

/// Denominator of the symmetric overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapDenominator {
    /// `max(|A|, |B|)`
    Max,
    /// `(|A| + |B|) / 2`
    Dice,
}

/// How shared grams are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Counting {
    /// Per-gram minimum of the two counts, over total reference count.
    #[default]
    Clipped,
    /// Distinct shared grams over distinct reference grams.
    Set,
}

impl Counting {
    pub fn as_str(self) -> &'static str {
        match self {
            Counting::Clipped => "clipped",
            Counting::Set => "set",
        }
    }

    pub fn parse(s: &str) -> Option<Counting> {
        match s {
            "clipped" => Some(Counting::Clipped),
            "set" => Some(Counting::Set),
            _ => None,
        }
    }
}

pub fn ngram_overlap(
    a: &NGramMultiset,
    b: &NGramMultiset,
    denominator: OverlapDenominator,
) -> Result<f64, NgramError> {
    if !a.same_config(b) {
        return Err(NgramError::MismatchedGramConfig);
    }
    let (ta, tb) = (a.total(), b.total());
    if ta == 0 && tb == 0 {
        return Ok(1.0);
    }
    let denom = match denominator {
        OverlapDenominator::Max => ta.max(tb) as f64,
        OverlapDenominator::Dice => (ta + tb) as f64 / 2.0,
    };
    Ok(a.clipped_intersection(b) as f64 / denom)
}

/// Shared grams over the reference's grams. Not symmetric.
pub fn rouge_n(candidate: &NGramMultiset, reference: &NGramMultiset) -> Result<f64, NgramError> {
    rouge_n_with(candidate, reference, Counting::Clipped)
}

pub fn rouge_n_with(
    candidate: &NGramMultiset,
    reference: &NGramMultiset,
    counting: Counting,
) -> Result<f64, NgramError> {
    if !candidate.same_config(reference) {
        return Err(NgramError::MismatchedGramConfig);
    }
    let (shared, total) = overlap_counts(candidate, reference, counting);
    if total == 0 {
        return Err(NgramError::EmptyReference);
    }
    Ok(shared as f64 / total as f64)
}

fn overlap_counts(
    candidate: &NGramMultiset,
    reference: &NGramMultiset,
    counting: Counting,
) -> (usize, usize) {
    match counting {
        Counting::Clipped => (candidate.clipped_intersection(reference), reference.total()),
        Counting::Set => (candidate.set_intersection(reference), reference.distinct()),
    }
}

/// ROUGE over unigrams plus skip-bigrams with at most `skip` gaps.
/// `skip = 4` is the usual SU4 configuration.
pub fn rouge_su<S: AsRef<str>>(
    candidate: &[S],
    reference: &[S],
    skip: usize,
    unit: Unit,
    counting: Counting,
) -> Result<f64, NgramError> {
    let mut shared = 0;
    let mut total = 0;
    for (n, k) in [(1, 0), (2, skip)] {
        let can = extract_ngrams(candidate, n, k, unit)?;
        let reference = extract_ngrams(reference, n, k, unit)?;
        let (s, t) = overlap_counts(&can, &reference, counting);
        shared += s;
        total += t;
    }
    if total == 0 {
        return Err(NgramError::EmptyReference);
    }
    Ok(shared as f64 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_owned).collect()
    }

    fn bigrams(s: &str) -> NGramMultiset {
        extract_ngrams(&words(s), 2, 0, Unit::Word).unwrap()
    }

    #[test]
    fn overlap_examples() {
        let abc = bigrams("a b c");
        assert_eq!(ngram_overlap(&abc, &abc, OverlapDenominator::Max).unwrap(), 1.0);
        assert_eq!(
            ngram_overlap(&abc, &bigrams("a b d"), OverlapDenominator::Max).unwrap(),
            0.5
        );
        assert_eq!(
            ngram_overlap(&abc, &bigrams("x y z"), OverlapDenominator::Dice).unwrap(),
            0.0
        );
        let empty = bigrams("a");
        assert_eq!(ngram_overlap(&empty, &empty, OverlapDenominator::Max).unwrap(), 1.0);
        assert_eq!(ngram_overlap(&empty, &abc, OverlapDenominator::Max).unwrap(), 0.0);
    }

    #[test]
    fn overlap_rejects_mismatched_configs() {
        let tri = extract_ngrams(&words("a b c"), 3, 0, Unit::Word).unwrap();
        assert_eq!(
            ngram_overlap(&bigrams("a b c"), &tri, OverlapDenominator::Max),
            Err(NgramError::MismatchedGramConfig)
        );
        let chars = extract_ngrams(&words("a b c"), 2, 0, Unit::Character).unwrap();
        assert_eq!(rouge_n(&chars, &bigrams("a b c")), Err(NgramError::MismatchedGramConfig));
    }

    #[test]
    fn rouge_n_examples() {
        let abc = bigrams("a b c");
        assert_eq!(rouge_n(&abc, &abc).unwrap(), 1.0);
        let v = rouge_n(&abc, &bigrams("a b c d")).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(rouge_n(&abc, &bigrams("x y z")).unwrap(), 0.0);
        assert_eq!(rouge_n(&abc, &bigrams("a")), Err(NgramError::EmptyReference));
    }

    #[test]
    fn clipping_and_set_counting_differ_on_repeats() {
        let can = bigrams("a b a b");
        let reference = bigrams("a b x a b");
        // can {ab:2, ba:1}, ref {ab:2, bx:1, xa:1}
        assert_eq!(rouge_n(&can, &reference).unwrap(), 0.5);
        let set = rouge_n_with(&can, &reference, Counting::Set).unwrap();
        assert!((set - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rouge_su_examples() {
        let ab = words("a b");
        assert_eq!(rouge_su(&ab, &ab, 4, Unit::Word, Counting::Clipped).unwrap(), 1.0);
        let v = rouge_su(&ab, &words("a c"), 4, Unit::Word, Counting::Clipped).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(
            rouge_su(&ab, &words("x y"), 4, Unit::Word, Counting::Clipped).unwrap(),
            0.0
        );
        let none: Vec<String> = Vec::new();
        assert_eq!(
            rouge_su(&ab, &none, 4, Unit::Word, Counting::Clipped),
            Err(NgramError::EmptyReference)
        );
    }
}
