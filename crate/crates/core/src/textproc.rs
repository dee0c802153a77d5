//! Text preprocessing: phrase segmentation, tokenization, and the term and
//! n-gram representations the metrics operate on.
//!
//! Everything here is a pure function of its inputs. A [`PipelineConfig`] is
//! immutable once built; the `with_*` methods return a new value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// The shipped German stopword list (one lowercase form per line).
pub const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords-de.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("document `{0}` contains no phrases")]
    EmptyDocument(String),
    #[error("n-gram length must be at least 1")]
    InvalidGramLength,
}

/// How raw text is cut into phrases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentMode {
    /// One phrase per nonblank line. Indices match gold alignment maps.
    Line,
    /// Split after `.`, `?` or `!` followed by whitespace.
    Sentence,
}

/// Element granularity for character- or word-based metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    Character,
    Word,
}

impl Unit {
    pub fn as_str(self) -> &'static str {
        match self {
            Unit::Character => "char",
            Unit::Word => "word",
        }
    }

    pub fn parse(s: &str) -> Option<Unit> {
        match s {
            "char" | "character" => Some(Unit::Character),
            "word" => Some(Unit::Word),
            _ => None,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Word splitting rule. Only one rule exists today.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenPattern {
    /// Maximal runs of Unicode letters and digits; everything else separates.
    AlphanumericRuns,
}

impl TokenPattern {
    pub fn id(self) -> &'static str {
        match self {
            TokenPattern::AlphanumericRuns => "alnum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    lowercase: bool,
    stopwords: BTreeSet<String>,
    stem: bool,
    token_pattern: TokenPattern,
    unit: Unit,
}

impl Default for PipelineConfig {
    /// Lowercasing on, shipped German stopwords, no stemming, word unit.
    fn default() -> Self {
        PipelineConfig::plain().with_stopwords(parse_stopword_list(DEFAULT_STOPWORDS))
    }
}

impl PipelineConfig {
    /// Lowercasing only: no stopwords, no stemming, word unit.
    pub fn plain() -> Self {
        PipelineConfig {
            lowercase: true,
            stopwords: BTreeSet::new(),
            stem: false,
            token_pattern: TokenPattern::AlphanumericRuns,
            unit: Unit::Word,
        }
    }

    pub fn with_lowercase(mut self, lowercase: bool) -> Self {
        self.lowercase = lowercase;
        if lowercase {
            self.stopwords = self.stopwords.iter().map(|w| w.to_lowercase()).collect();
        }
        self
    }

    pub fn with_stopwords<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.stopwords = words
            .into_iter()
            .map(Into::into)
            .map(|w| if self.lowercase { w.to_lowercase() } else { w })
            .collect();
        self
    }

    pub fn with_stem(mut self, stem: bool) -> Self {
        self.stem = stem;
        self
    }

    pub fn with_unit(mut self, unit: Unit) -> Self {
        self.unit = unit;
        self
    }

    pub fn lowercase(&self) -> bool {
        self.lowercase
    }

    pub fn stopwords(&self) -> &BTreeSet<String> {
        &self.stopwords
    }

    pub fn stem(&self) -> bool {
        self.stem
    }

    pub fn token_pattern(&self) -> TokenPattern {
        self.token_pattern
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    /// SHA-256 over the sorted stopword list joined by newlines, hex encoded.
    pub fn stopword_checksum(&self) -> String {
        let joined = self.stopwords.iter().cloned().collect::<Vec<_>>().join("\n");
        hex_digest(joined.as_bytes())
    }
}

/// Parses a stopword file: one word per line, `#` comments and blank lines skipped.
pub fn parse_stopword_list(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_owned)
        .collect()
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A document as an ordered list of phrases; a phrase's index is its position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhraseDocument {
    id: String,
    phrases: Vec<String>,
}

impl PhraseDocument {
    /// Trims every phrase and drops the empty ones.
    pub fn new<I, S>(id: impl Into<String>, phrases: I) -> Result<Self, TextError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let id = id.into();
        let phrases: Vec<String> = phrases
            .into_iter()
            .map(|p| p.as_ref().trim().to_owned())
            .filter(|p| !p.is_empty())
            .collect();
        if phrases.is_empty() {
            return Err(TextError::EmptyDocument(id));
        }
        Ok(PhraseDocument { id, phrases })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn phrases(&self) -> &[String] {
        &self.phrases
    }

    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }
}

pub fn segment_phrases(
    id: impl Into<String>,
    raw_text: &str,
    mode: SegmentMode,
) -> Result<PhraseDocument, TextError> {
    let text = raw_text.strip_prefix('\u{feff}').unwrap_or(raw_text);
    match mode {
        SegmentMode::Line => PhraseDocument::new(id, text.lines()),
        SegmentMode::Sentence => PhraseDocument::new(
            id,
            split_sentences(text)
                .iter()
                .map(|s| s.split_whitespace().collect::<Vec<_>>().join(" ")),
        ),
    }
}

const ABBREVIATIONS: &[&str] = &[
    "abb", "bzgl", "bzw", "ca", "d.h", "dr", "etc", "evtl", "ggf", "hr", "fr", "inkl", "jh",
    "mio", "mrd", "nr", "o.ä", "prof", "s", "sog", "st", "u.a", "usw", "vgl", "z.b", "zb",
];

fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut current = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        // a blank line always ends a sentence
        if c == '\n' {
            let mut j = i + 1;
            while j < chars.len() && chars[j] != '\n' && chars[j].is_whitespace() {
                j += 1;
            }
            if j < chars.len() && chars[j] == '\n' {
                out.push(std::mem::take(&mut current));
                i = j + 1;
                continue;
            }
        }
        current.push(c);
        if matches!(c, '.' | '?' | '!') {
            // absorb runs like "?!" or "..."
            while i + 1 < chars.len() && matches!(chars[i + 1], '.' | '?' | '!') {
                i += 1;
                current.push(chars[i]);
            }
            let next = chars.get(i + 1).copied();
            if next.is_none_or(char::is_whitespace) && ends_sentence(&current, &chars[i + 1..]) {
                out.push(std::mem::take(&mut current));
            }
        }
        i += 1;
    }
    out.push(current);
    out
}

fn ends_sentence(buffer: &str, rest: &[char]) -> bool {
    if !buffer.ends_with('.') || buffer.ends_with("..") {
        return true;
    }
    let word = buffer
        .rsplit(char::is_whitespace)
        .next()
        .unwrap_or("")
        .trim_start_matches(|c: char| !c.is_alphanumeric())
        .trim_end_matches('.');
    let lower = word.to_lowercase();
    if ABBREVIATIONS.contains(&lower.as_str()) {
        return false;
    }
    // initials ("A.") and ordinals ("15.")
    if word.chars().count() == 1 || (!word.is_empty() && word.chars().all(|c| c.is_ascii_digit()))
    {
        return false;
    }
    let next = rest.iter().find(|c| !c.is_whitespace());
    !matches!(next, Some(c) if c.is_lowercase())
}

/// Splits into letter/digit runs, then lowercases, removes stopwords and
/// stems, in that order, as configured.
pub fn tokenize_normalize(phrase: &str, config: &PipelineConfig) -> Vec<String> {
    phrase
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| {
            if config.lowercase {
                t.to_lowercase()
            } else {
                t.to_owned()
            }
        })
        .filter(|t| !config.stopwords.contains(t))
        .map(|t| if config.stem { stem_german(&t) } else { t })
        .collect()
}

/// Tokens of every phrase in document order.
pub fn document_tokens(doc: &PhraseDocument, config: &PipelineConfig) -> Vec<String> {
    doc.phrases()
        .iter()
        .flat_map(|p| tokenize_normalize(p, config))
        .collect()
}

const GERMAN_SUFFIXES: &[&str] = &["en", "er", "e", "n", "s"];
const MIN_STEM_CHARS: usize = 3;

/// Strips one of `-en -er -e -n -s` if at least three characters remain.
pub fn stem_german(token: &str) -> String {
    if !token.chars().all(char::is_alphabetic) {
        return token.to_owned();
    }
    for suffix in GERMAN_SUFFIXES {
        if let Some(stem) = token.strip_suffix(suffix) {
            if stem.chars().count() >= MIN_STEM_CHARS {
                return stem.to_owned();
            }
        }
    }
    token.to_owned()
}

/// The element sequence for a unit: tokens themselves, or the characters
/// of the tokens joined by single spaces.
pub fn unit_sequence(tokens: &[String], unit: Unit) -> Vec<String> {
    match unit {
        Unit::Word => tokens.to_vec(),
        Unit::Character => tokens
            .join(" ")
            .chars()
            .map(|c| c.to_string())
            .collect(),
    }
}

/// Raw term-frequency weights. Zero weights are never stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TermVector {
    weights: BTreeMap<String, f64>,
}

impl TermVector {
    /// Builds a vector from arbitrary nonnegative weights, dropping zeros.
    /// Returns `None` if any weight is negative or not finite.
    pub fn from_weights<I, S>(weights: I) -> Option<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (term, w) in weights {
            if !w.is_finite() || w < 0.0 {
                return None;
            }
            if w > 0.0 {
                *map.entry(term.into()).or_insert(0.0) += w;
            }
        }
        Some(TermVector { weights: map })
    }

    /// Distinct terms (the dimension k).
    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, term: &str) -> f64 {
        self.weights.get(term).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.weights.iter().map(|(t, &w)| (t.as_str(), w))
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.values().sum()
    }

    pub fn norm(&self) -> f64 {
        self.weights.values().map(|w| w * w).sum::<f64>().sqrt()
    }

    /// Scaled to unit L2 norm; the empty vector stays empty.
    pub fn normalized(&self) -> TermVector {
        let norm = self.norm();
        if norm == 0.0 {
            return self.clone();
        }
        TermVector {
            weights: self
                .weights
                .iter()
                .map(|(t, w)| (t.clone(), w / norm))
                .collect(),
        }
    }
}

pub fn term_vector<S: AsRef<str>>(tokens: &[S]) -> TermVector {
    let mut weights = BTreeMap::new();
    for t in tokens {
        *weights.entry(t.as_ref().to_owned()).or_insert(0.0) += 1.0;
    }
    TermVector { weights }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermSet {
    terms: BTreeSet<String>,
}

impl TermSet {
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Self {
        TermSet {
            terms: tokens.iter().map(|t| t.as_ref().to_owned()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.contains(term)
    }

    pub fn intersection_len(&self, other: &TermSet) -> usize {
        self.terms.intersection(&other.terms).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(String::as_str)
    }
}

impl<S: Into<String>> FromIterator<S> for TermSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        TermSet {
            terms: iter.into_iter().map(Into::into).collect(),
        }
    }
}

/// Multiset of (skip-)n-grams over characters or words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramMultiset {
    grams: BTreeMap<Vec<String>, usize>,
    n: usize,
    skip: usize,
    unit: Unit,
}

impl NGramMultiset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn skip(&self) -> usize {
        self.skip
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    /// Total number of grams, counting multiplicity.
    pub fn total(&self) -> usize {
        self.grams.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.grams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grams.is_empty()
    }

    pub fn count<S: AsRef<str>>(&self, gram: &[S]) -> usize {
        let key: Vec<String> = gram.iter().map(|s| s.as_ref().to_owned()).collect();
        self.grams.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[String], usize)> {
        self.grams.iter().map(|(g, &c)| (g.as_slice(), c))
    }

    pub fn same_config(&self, other: &NGramMultiset) -> bool {
        self.n == other.n && self.skip == other.skip && self.unit == other.unit
    }

    /// Sum over grams of the smaller count.
    pub fn clipped_intersection(&self, other: &NGramMultiset) -> usize {
        let (small, large) = if self.grams.len() <= other.grams.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .grams
            .iter()
            .map(|(g, &c)| c.min(large.grams.get(g).copied().unwrap_or(0)))
            .sum()
    }

    /// Number of distinct grams present in both.
    pub fn set_intersection(&self, other: &NGramMultiset) -> usize {
        self.grams
            .keys()
            .filter(|g| other.grams.contains_key(*g))
            .count()
    }
}

/// All grams of `n` elements, in sequence order, whose skipped positions
/// total at most `skip`. `skip = 0` gives the contiguous n-grams.
pub fn extract_ngrams<S: AsRef<str>>(
    items: &[S],
    n: usize,
    skip: usize,
    unit: Unit,
) -> Result<NGramMultiset, TextError> {
    if n == 0 {
        return Err(TextError::InvalidGramLength);
    }
    let mut grams = BTreeMap::new();
    let mut current = Vec::with_capacity(n);
    for start in 0..items.len() {
        current.push(start);
        collect_grams(items, n, skip, &mut current, &mut grams);
        current.pop();
    }
    Ok(NGramMultiset {
        grams,
        n,
        skip,
        unit,
    })
}

fn collect_grams<S: AsRef<str>>(
    items: &[S],
    n: usize,
    budget: usize,
    current: &mut Vec<usize>,
    out: &mut BTreeMap<Vec<String>, usize>,
) {
    if current.len() == n {
        let gram = current.iter().map(|&i| items[i].as_ref().to_owned()).collect();
        *out.entry(gram).or_insert(0) += 1;
        return;
    }
    let last = *current.last().expect("gram has a first element");
    for gap in 0..=budget {
        let next = last + 1 + gap;
        if next >= items.len() {
            break;
        }
        current.push(next);
        collect_grams(items, n, budget - gap, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &[&str]) -> Vec<String> {
        s.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn line_mode_splits_and_drops_blanks() {
        let doc = segment_phrases("d", "A.\nB b.\n", SegmentMode::Line).unwrap();
        assert_eq!(doc.phrases(), ["A.", "B b."]);
        let doc = segment_phrases("d", "x\n\n\ny", SegmentMode::Line).unwrap();
        assert_eq!(doc.phrases(), ["x", "y"]);
        let doc = segment_phrases("d", "x\r\n  y  \r\n", SegmentMode::Line).unwrap();
        assert_eq!(doc.phrases(), ["x", "y"]);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(
            segment_phrases("d", "", SegmentMode::Line),
            Err(TextError::EmptyDocument("d".into()))
        );
        assert!(segment_phrases("d", " \n\t\n", SegmentMode::Sentence).is_err());
    }

    #[test]
    fn sentence_mode() {
        let doc = segment_phrases("d", "Er kam. Sie ging.", SegmentMode::Sentence).unwrap();
        assert_eq!(doc.phrases(), ["Er kam.", "Sie ging."]);
        let doc = segment_phrases(
            "d",
            "Das ist z.B. gut. Im 15. Jahrhundert war es so! Wirklich?",
            SegmentMode::Sentence,
        )
        .unwrap();
        assert_eq!(
            doc.phrases(),
            ["Das ist z.B. gut.", "Im 15. Jahrhundert war es so!", "Wirklich?"]
        );
        let doc = segment_phrases("d", "Erste Zeile\n\nZweite\nZeile.", SegmentMode::Sentence).unwrap();
        assert_eq!(doc.phrases(), ["Erste Zeile", "Zweite Zeile."]);
    }

    #[test]
    fn tokenize_examples() {
        let cfg = PipelineConfig::plain().with_stopwords(["der"]);
        assert_eq!(tokenize_normalize("Der Baumkuchen!", &cfg), ["baumkuchen"]);
        assert_eq!(
            tokenize_normalize("Größe 15", &PipelineConfig::plain()),
            ["größe", "15"]
        );
        assert!(tokenize_normalize("", &cfg).is_empty());
        let keep_case = PipelineConfig::plain().with_lowercase(false);
        assert_eq!(tokenize_normalize("Straße, Ofen", &keep_case), ["Straße", "Ofen"]);
    }

    #[test]
    fn stopwords_are_lowercased_when_lowercasing() {
        let cfg = PipelineConfig::plain().with_stopwords(["Der", "UND"]);
        assert!(cfg.stopwords().contains("der"));
        assert!(cfg.stopwords().contains("und"));
        assert_eq!(tokenize_normalize("Der und DER", &cfg), Vec::<String>::new());
    }

    #[test]
    fn stemming_runs_last() {
        let cfg = PipelineConfig::plain().with_stem(true).with_stopwords(["kuchen"]);
        // "kuchen" is a stopword before stemming, so it is removed, not stemmed
        assert_eq!(
            tokenize_normalize("Kuchen Öfen Backer Torte Haus 1990", &cfg),
            ["öfe", "back", "tort", "hau", "1990"]
        );
        assert_eq!(stem_german("es"), "es");
        assert_eq!(stem_german("rezepte"), "rezept");
    }

    #[test]
    fn default_config_uses_shipped_list() {
        let cfg = PipelineConfig::default();
        assert!(cfg.stopwords().contains("und"));
        assert!(cfg.stopwords().contains("für"));
        assert!(!cfg.stopwords().iter().any(|w| w.starts_with('#')));
        assert_eq!(cfg.stopword_checksum().len(), 64);
        assert_ne!(cfg.stopword_checksum(), PipelineConfig::plain().stopword_checksum());
    }

    #[test]
    fn term_vector_counts() {
        let v = term_vector(&toks(&["a", "b", "a"]));
        assert_eq!(v.weight("a"), 2.0);
        assert_eq!(v.weight("b"), 1.0);
        assert_eq!(v.dimension(), 2);
        assert_eq!(term_vector::<String>(&[]).dimension(), 0);
        assert_eq!(term_vector(&toks(&["x"])).weight("x"), 1.0);
    }

    #[test]
    fn from_weights_rejects_negative_and_drops_zero() {
        assert!(TermVector::from_weights([("a", -1.0)]).is_none());
        assert!(TermVector::from_weights([("a", f64::NAN)]).is_none());
        let v = TermVector::from_weights([("a", 0.0), ("b", 2.0)]).unwrap();
        assert_eq!(v.dimension(), 1);
    }

    #[test]
    fn contiguous_and_skip_bigrams() {
        let abc = toks(&["a", "b", "c"]);
        let g = extract_ngrams(&abc, 2, 0, Unit::Word).unwrap();
        assert_eq!(g.total(), 2);
        assert_eq!(g.count(&["a", "b"]), 1);
        assert_eq!(g.count(&["b", "c"]), 1);

        let g = extract_ngrams(&abc, 2, 1, Unit::Word).unwrap();
        assert_eq!(g.total(), 3);
        assert_eq!(g.count(&["a", "c"]), 1);

        let g = extract_ngrams(&toks(&["a", "b", "c", "d"]), 2, 2, Unit::Word).unwrap();
        assert_eq!(g.total(), 6);
        for pair in [["a", "b"], ["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"], ["c", "d"]] {
            assert_eq!(g.count(&pair), 1);
        }
    }

    #[test]
    fn ngram_edge_cases() {
        assert_eq!(
            extract_ngrams(&toks(&["a"]), 0, 0, Unit::Word),
            Err(TextError::InvalidGramLength)
        );
        assert!(extract_ngrams(&toks(&["a"]), 3, 2, Unit::Word).unwrap().is_empty());
        // skips are a total budget across the gram
        let g = extract_ngrams(&toks(&["a", "b", "c", "d", "e"]), 3, 1, Unit::Word).unwrap();
        assert_eq!(g.count(&["a", "c", "d"]), 1);
        assert_eq!(g.count(&["a", "c", "e"]), 0);
    }

    #[test]
    fn character_unit_sequence() {
        assert_eq!(unit_sequence(&toks(&["ab", "c"]), Unit::Character), ["a", "b", " ", "c"]);
        assert_eq!(unit_sequence(&toks(&["ab", "c"]), Unit::Word), ["ab", "c"]);
    }
}
