//! Phrase-level matching: similarity matrices, link prediction, and scoring
//! of predicted links against a gold map.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::alignment::{AlignmentError, AlignmentMap};
use crate::metric::{MetricError, MetricId, Scorer};
use crate::textproc::PhraseDocument;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatchError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Alignment(#[from] AlignmentError),
    #[error("threshold {0} outside [0, 1]")]
    InvalidThreshold(f64),
}

/// Row-major `sources × targets` similarity scores.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<f64>,
    metric: Option<MetricId>,
    config_checksum: String,
}

impl SimilarityMatrix {
    /// Wraps precomputed scores; `None` if the shape is wrong or any cell is
    /// not finite.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        let cells: Vec<f64> = rows.into_iter().flatten().collect();
        if cells.iter().any(|v| !v.is_finite()) {
            return None;
        }
        Some(SimilarityMatrix {
            rows: r,
            cols: c,
            cells,
            metric: None,
            config_checksum: String::new(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn metric(&self) -> Option<MetricId> {
        self.metric
    }

    pub fn config_checksum(&self) -> &str {
        &self.config_checksum
    }

    fn row_argmax(&self, row: usize) -> Option<usize> {
        argmax_lowest((0..self.cols).map(|c| self.get(row, c)))
    }

    fn col_argmax(&self, col: usize) -> Option<usize> {
        argmax_lowest((0..self.rows).map(|r| self.get(r, col)))
    }
}

// first index of the maximum
fn argmax_lowest(values: impl Iterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

/// Scores every (source phrase, target phrase) pair. Distances are mapped
/// to similarities with `1 / (1 + d)`.
pub fn build_matrix(
    source: &PhraseDocument,
    target: &PhraseDocument,
    metric: MetricId,
    scorer: &Scorer,
) -> Result<SimilarityMatrix, MatchError> {
    let src_tokens: Vec<Vec<String>> = source.phrases().iter().map(|p| scorer.tokens(p)).collect();
    let tgt_tokens: Vec<Vec<String>> = target.phrases().iter().map(|p| scorer.tokens(p)).collect();
    let rows = src_tokens
        .par_iter()
        .map(|s| {
            tgt_tokens
                .iter()
                .map(|t| scorer.similarity_tokens(metric, s, t))
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimilarityMatrix {
        rows: source.len(),
        cols: target.len(),
        cells: rows.into_iter().flatten().collect(),
        metric: Some(metric),
        config_checksum: scorer.fingerprint(),
    })
}

/// Links `(i, j)` when the cell reaches `threshold` and `j` is the best
/// target of row `i` or `i` is the best source of column `j`. Ties go to
/// the lowest index.
pub fn predict_alignment(matrix: &SimilarityMatrix, threshold: f64) -> Result<AlignmentMap, MatchError> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(MatchError::InvalidThreshold(threshold));
    }
    let col_best: Vec<Option<usize>> = (0..matrix.cols).map(|c| matrix.col_argmax(c)).collect();
    let mut links = Vec::new();
    for i in 0..matrix.rows {
        let row_best = matrix.row_argmax(i);
        for (j, &best_source) in col_best.iter().enumerate() {
            if matrix.get(i, j) >= threshold && (row_best == Some(j) || best_source == Some(i)) {
                links.push((i, j));
            }
        }
    }
    Ok(AlignmentMap::from_links(links, matrix.rows, matrix.cols)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    pub true_links: BTreeSet<(usize, usize)>,
    pub predicted_links: BTreeSet<(usize, usize)>,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl MatchReport {
    pub fn correct(&self) -> usize {
        self.true_links.intersection(&self.predicted_links).count()
    }
}

/// Link-level precision, recall and F1. An empty side scores 1 only when
/// the other side is empty too.
pub fn score_alignment(predicted: &AlignmentMap, gold: &AlignmentMap) -> Result<MatchReport, MatchError> {
    if predicted.source_count() != gold.source_count() || predicted.target_count() != gold.target_count() {
        return Err(AlignmentError::InconsistentCounts {
            map_sources: predicted.source_count(),
            map_targets: predicted.target_count(),
            doc_sources: gold.source_count(),
            doc_targets: gold.target_count(),
        }
        .into());
    }
    let predicted_links = predicted.links();
    let true_links = gold.links();
    let correct = true_links.intersection(&predicted_links).count() as f64;
    let ratio = |den: usize, other_empty: bool| {
        if den == 0 {
            if other_empty {
                1.0
            } else {
                0.0
            }
        } else {
            correct / den as f64
        }
    };
    let precision = ratio(predicted_links.len(), true_links.is_empty());
    let recall = ratio(true_links.len(), predicted_links.is_empty());
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(MatchReport {
        true_links,
        predicted_links,
        precision,
        recall,
        f1,
    })
}
