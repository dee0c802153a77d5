//! Text similarity between a source document and its paraphrases, at
//! document and phrase level.
//!
//! - [`textproc`]: segmentation, tokenization, term vectors and n-grams
//! - [`vsm`], [`editdist`], [`ngram`]: the similarity and distance measures
//! - [`metric`]: metric ids and the [`metric::Scorer`] that applies them to text
//! - [`alignment`]: gold phrase-alignment maps and structural rule checks
//! - [`matcher`]: phrase similarity matrices and link prediction
//! - [`evalreport`]: corpus evaluation, correlation and reports
//! - [`cli`]: the `parasim` command

pub mod alignment;
pub mod cli;
pub mod config;
pub mod editdist;
pub mod evalreport;
pub mod matcher;
pub mod metric;
pub mod ngram;
pub mod textproc;
pub mod vsm;

pub use metric::{MetricId, MetricKind, Scorer, ScoringParams};
pub use textproc::{PhraseDocument, PipelineConfig};
