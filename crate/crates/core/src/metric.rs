//! Metric registry and the scorer that runs the text pipeline in front of
//! each measure.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::editdist::{self, EditError, EditParams};
use crate::ngram::{self, Counting, NgramError, OverlapDenominator};
use crate::textproc::{
    self, extract_ngrams, hex_digest, term_vector, tokenize_normalize, PhraseDocument,
    PipelineConfig, TermSet,
};
use crate::vsm;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
    #[error(transparent)]
    Edit(#[from] EditError),
    #[error(transparent)]
    Ngram(#[from] NgramError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricId {
    Bigrams,
    BigramsSu4,
    Trigrams,
    Cosine,
    Dice,
    Euclidean,
    Jaccard,
    JaroWinkler,
    Levenshtein,
    LevenshteinWords,
    Manhattan,
    /// Symmetric n-gram overlap with configurable n; not part of `all`.
    NgramOverlap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Similarity,
    Distance,
}

impl MetricId {
    /// The standard metric set, in report order.
    pub const ALL: [MetricId; 11] = [
        MetricId::Bigrams,
        MetricId::BigramsSu4,
        MetricId::Trigrams,
        MetricId::Cosine,
        MetricId::Dice,
        MetricId::Euclidean,
        MetricId::Jaccard,
        MetricId::JaroWinkler,
        MetricId::Levenshtein,
        MetricId::LevenshteinWords,
        MetricId::Manhattan,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MetricId::Bigrams => "2grams",
            MetricId::BigramsSu4 => "2grams-su4",
            MetricId::Trigrams => "3grams",
            MetricId::Cosine => "cosine",
            MetricId::Dice => "dice",
            MetricId::Euclidean => "euclidean",
            MetricId::Jaccard => "jaccard",
            MetricId::JaroWinkler => "jw",
            MetricId::Levenshtein => "levenshtein",
            MetricId::LevenshteinWords => "levenshtein-w",
            MetricId::Manhattan => "manhattan",
            MetricId::NgramOverlap => "ngram-overlap",
        }
    }

    pub fn kind(self) -> MetricKind {
        match self {
            MetricId::Euclidean | MetricId::Manhattan => MetricKind::Distance,
            _ => MetricKind::Similarity,
        }
    }

    /// Parses `all` or a comma-separated list of ids.
    pub fn parse_list(s: &str) -> Result<Vec<MetricId>, MetricError> {
        if s.trim() == "all" {
            return Ok(MetricId::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',') {
            let id: MetricId = part.trim().parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        Ok(out)
    }
}

impl FromStr for MetricId {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MetricId::ALL
            .iter()
            .chain(&[MetricId::NgramOverlap])
            .copied()
            .find(|m| m.id() == s)
            .ok_or_else(|| MetricError::UnknownMetric(s.to_owned()))
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Maps a distance to a bounded similarity: `1 / (1 + d)`.
pub fn distance_to_similarity(d: f64) -> f64 {
    1.0 / (1.0 + d)
}

/// Metric settings beyond the text pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoringParams {
    pub edit: EditParams,
    /// Skip budget of the skip-bigram metric.
    pub su_skip: usize,
    pub counting: Counting,
    /// Scale term vectors to unit length before computing distances.
    pub normalize_distances: bool,
    pub overlap_n: usize,
    pub overlap_denominator: OverlapDenominator,
}

impl Default for ScoringParams {
    fn default() -> Self {
        ScoringParams {
            edit: EditParams::default(),
            su_skip: 4,
            counting: Counting::Clipped,
            normalize_distances: true,
            overlap_n: 2,
            overlap_denominator: OverlapDenominator::Max,
        }
    }
}

/// Pipeline plus metric settings; scores raw text.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scorer {
    pub pipeline: PipelineConfig,
    pub params: ScoringParams,
}

impl Scorer {
    pub fn new(pipeline: PipelineConfig, params: ScoringParams) -> Self {
        Scorer { pipeline, params }
    }

    pub fn tokens(&self, text: &str) -> Vec<String> {
        tokenize_normalize(text, &self.pipeline)
    }

    pub fn document_tokens(&self, doc: &PhraseDocument) -> Vec<String> {
        textproc::document_tokens(doc, &self.pipeline)
    }

    /// Scores two normalized token sequences. For the asymmetric n-gram
    /// metrics `reference` is the denominator side.
    pub fn score_tokens(
        &self,
        metric: MetricId,
        reference: &[String],
        candidate: &[String],
    ) -> Result<f64, MetricError> {
        let p = &self.params;
        let unit = self.pipeline.unit();
        let score = match metric {
            MetricId::Bigrams => self.rouge(reference, candidate, 2)?,
            MetricId::Trigrams => self.rouge(reference, candidate, 3)?,
            MetricId::BigramsSu4 => {
                let (r, c) = (
                    textproc::unit_sequence(reference, unit),
                    textproc::unit_sequence(candidate, unit),
                );
                match ngram::rouge_su(&c, &r, p.su_skip, unit, p.counting) {
                    Err(NgramError::EmptyReference) => empty_reference_score(c.is_empty()),
                    other => other?,
                }
            }
            MetricId::NgramOverlap => {
                let r = extract_ngrams(&textproc::unit_sequence(reference, unit), p.overlap_n, 0, unit)
                    .map_err(NgramError::from)?;
                let c = extract_ngrams(&textproc::unit_sequence(candidate, unit), p.overlap_n, 0, unit)
                    .map_err(NgramError::from)?;
                ngram::ngram_overlap(&r, &c, p.overlap_denominator)?
            }
            MetricId::Cosine => vsm::cosine(&term_vector(reference), &term_vector(candidate)),
            MetricId::Dice => vsm::dice(&TermSet::from_tokens(reference), &TermSet::from_tokens(candidate)),
            MetricId::Jaccard => {
                vsm::jaccard(&TermSet::from_tokens(reference), &TermSet::from_tokens(candidate))
            }
            MetricId::Euclidean => vsm::euclidean(
                &term_vector(reference),
                &term_vector(candidate),
                p.normalize_distances,
            ),
            MetricId::Manhattan => vsm::manhattan(
                &term_vector(reference),
                &term_vector(candidate),
                p.normalize_distances,
            ),
            MetricId::JaroWinkler => {
                editdist::jaro_winkler(&joined_chars(reference), &joined_chars(candidate), &p.edit)?
            }
            MetricId::Levenshtein => {
                editdist::levenshtein_normalized(&joined_chars(reference), &joined_chars(candidate))
            }
            MetricId::LevenshteinWords => editdist::levenshtein_normalized(reference, candidate),
        };
        Ok(score)
    }

    fn rouge(&self, reference: &[String], candidate: &[String], n: usize) -> Result<f64, MetricError> {
        let unit = self.pipeline.unit();
        let r = extract_ngrams(&textproc::unit_sequence(reference, unit), n, 0, unit)
            .map_err(NgramError::from)?;
        let c = extract_ngrams(&textproc::unit_sequence(candidate, unit), n, 0, unit)
            .map_err(NgramError::from)?;
        match ngram::rouge_n_with(&c, &r, self.params.counting) {
            Err(NgramError::EmptyReference) => Ok(empty_reference_score(c.is_empty())),
            other => Ok(other?),
        }
    }

    /// Raw score of two phrases (distances stay distances).
    pub fn score_text(&self, metric: MetricId, reference: &str, candidate: &str) -> Result<f64, MetricError> {
        self.score_tokens(metric, &self.tokens(reference), &self.tokens(candidate))
    }

    /// Whole-document score: each document flattened to one token sequence.
    pub fn document_score(
        &self,
        metric: MetricId,
        source: &PhraseDocument,
        target: &PhraseDocument,
    ) -> Result<f64, MetricError> {
        self.score_tokens(metric, &self.document_tokens(source), &self.document_tokens(target))
    }

    /// Like [`Scorer::score_tokens`], with distances mapped into `(0, 1]`.
    pub fn similarity_tokens(
        &self,
        metric: MetricId,
        reference: &[String],
        candidate: &[String],
    ) -> Result<f64, MetricError> {
        let raw = self.score_tokens(metric, reference, candidate)?;
        Ok(match metric.kind() {
            MetricKind::Similarity => raw,
            MetricKind::Distance => distance_to_similarity(raw),
        })
    }

    /// Canonical `key=value` lines of every setting that affects scores.
    pub fn describe(&self) -> String {
        let p = &self.params;
        let pl = &self.pipeline;
        let denominator = match p.overlap_denominator {
            OverlapDenominator::Max => "max",
            OverlapDenominator::Dice => "dice",
        };
        format!(
            "lowercase={}\nstopwords_sha256={}\nstopword_count={}\nstem={}\ntoken_pattern={}\nunit={}\n\
             su_skip={}\ncounting={}\nnormalize_distances={}\nngram_n={}\noverlap_denominator={}\n\
             jw_prefix_weight={}\njw_boost_threshold={}\njw_max_prefix={}\n",
            pl.lowercase(),
            pl.stopword_checksum(),
            pl.stopwords().len(),
            pl.stem(),
            pl.token_pattern().id(),
            pl.unit(),
            p.su_skip,
            p.counting.as_str(),
            p.normalize_distances,
            p.overlap_n,
            denominator,
            p.edit.jw_prefix_weight,
            p.edit.jw_boost_threshold,
            p.edit.jw_max_prefix,
        )
    }

    /// First 16 hex digits of the SHA-256 of [`Scorer::describe`].
    pub fn fingerprint(&self) -> String {
        hex_digest(self.describe().as_bytes())[..16].to_owned()
    }
}

// With no reference grams there is nothing to recall: identical emptiness
// scores 1, anything else 0.
fn empty_reference_score(candidate_empty: bool) -> f64 {
    if candidate_empty {
        1.0
    } else {
        0.0
    }
}

fn joined_chars(tokens: &[String]) -> Vec<char> {
    tokens.join(" ").chars().collect()
}
