//! Corpus evaluation: load a corpus, score every document against the
//! source, aggregate per sub-corpus, and correlate the metrics.

mod corpus;
mod report;
mod stats;

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::alignment::AlignmentError;
use crate::metric::{MetricError, MetricId, Scorer};
use crate::textproc::TextError;

pub use corpus::{load_corpus, read_document, Corpus, CorpusDocument, Subcorpus};
pub use report::{
    classify_paraphrase_level, correlation_analysis, emit_correlation_matrix,
    emit_document_scores, emit_report, fixed5, parse_json_report, score_corpus, subcorpus_means,
    Correlation, CorrelationMatrix, DocumentScores, ParaphraseLevel, Reference, ReportFormat,
    ScoreRow, ScoreTable, CSV_HEADER,
};
pub use stats::{mean, pearson, StatsError};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("corpus has no source document at {}", .0.display())]
    MissingSource(PathBuf),
    #[error("sub-corpus `{0}` holds no documents")]
    EmptySubcorpus(String),
    #[error("map {} does not name an existing document", .0.display())]
    DanglingMap(PathBuf),
    #[error("{}: {error}", path.display())]
    Map { path: PathBuf, error: AlignmentError },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("reference metric `{0}` is not among the scored metrics")]
    MissingReference(String),
    #[error("thresholds must satisfy 0 <= low < high <= 1 (got {0}, {1})")]
    InvalidThresholds(f64, f64),
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

impl EvalError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        EvalError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Everything one `corpus-eval` run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub table: ScoreTable,
    pub scores: DocumentScores,
    pub correlation: Correlation,
}

pub fn evaluate_corpus(
    corpus: &Corpus,
    metrics: &[MetricId],
    scorer: &Scorer,
    reference: Reference,
) -> Result<Evaluation, EvalError> {
    let scores = score_corpus(corpus, metrics, scorer)?;
    let mut table = ScoreTable::from_scores(&scores)?;
    let correlation = correlation_analysis(&scores.correlation_input(), reference)?;
    table.apply_correlation(&correlation);
    Ok(Evaluation {
        table,
        scores,
        correlation,
    })
}
