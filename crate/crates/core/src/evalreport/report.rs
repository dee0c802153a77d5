//! Score tables: per-sub-corpus means, correlation against a reference
//! profile, and CSV/JSON emission.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::metric::{distance_to_similarity, MetricId, MetricKind, Scorer};

use super::corpus::{Corpus, Subcorpus};
use super::stats::{mean, pearson};
use super::EvalError;

/// Whole-document scores of every corpus document against the source.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentScores {
    pub metrics: Vec<MetricId>,
    pub documents: Vec<(Subcorpus, String)>,
    /// `values[doc][metric]`, raw (distances stay distances).
    pub values: Vec<Vec<f64>>,
}

impl DocumentScores {
    /// Scores of one metric over the documents of the given sub-corpora,
    /// in document order.
    pub fn column(&self, metric: MetricId, subcorpora: &[Subcorpus]) -> Vec<f64> {
        let Some(m) = self.metrics.iter().position(|&x| x == metric) else {
            return Vec::new();
        };
        self.documents
            .iter()
            .zip(&self.values)
            .filter(|((sub, _), _)| subcorpora.contains(sub))
            .map(|(_, row)| row[m])
            .collect()
    }

    /// Metric columns over the documents that enter correlation analysis
    /// (basic, complex, unrelated).
    pub fn correlation_input(&self) -> Vec<(MetricId, Vec<f64>)> {
        self.metrics
            .iter()
            .map(|&m| (m, self.column(m, &CORRELATED)))
            .collect()
    }
}

const CORRELATED: [Subcorpus; 3] = [Subcorpus::Basic, Subcorpus::Complex, Subcorpus::Unrelated];

pub fn score_corpus(corpus: &Corpus, metrics: &[MetricId], scorer: &Scorer) -> Result<DocumentScores, EvalError> {
    let source_tokens = scorer.document_tokens(&corpus.source);
    let values = corpus
        .documents
        .par_iter()
        .map(|doc| {
            let tokens = scorer.document_tokens(&doc.document);
            metrics
                .iter()
                .map(|&m| scorer.score_tokens(m, &source_tokens, &tokens))
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DocumentScores {
        metrics: metrics.to_vec(),
        documents: corpus
            .documents
            .iter()
            .map(|d| (d.subcorpus, d.name.clone()))
            .collect(),
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub metric: String,
    /// mean over the basic sub-corpus
    pub low: f64,
    /// mean over the complex sub-corpus
    pub high: f64,
    /// mean over unrelated control documents
    pub not: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cited: Option<f64>,
    pub pearson: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub metrics: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.metrics.iter().position(|m| m == a)?;
        let j = self.metrics.iter().position(|m| m == b)?;
        Some(self.values[i][j])
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub rows: Vec<ScoreRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correlation: Option<CorrelationMatrix>,
}

impl ScoreTable {
    /// Means per metric and sub-corpus; the pearson column is left empty.
    pub fn from_scores(scores: &DocumentScores) -> Result<ScoreTable, EvalError> {
        let mean_of = |m, sub: Subcorpus| mean(&scores.column(m, &[sub]));
        let required = |m, sub: Subcorpus| {
            mean_of(m, sub).ok_or_else(|| EvalError::EmptySubcorpus(sub.relative_dir().to_owned()))
        };
        let rows = scores
            .metrics
            .iter()
            .map(|&m| {
                Ok(ScoreRow {
                    metric: m.id().to_owned(),
                    low: required(m, Subcorpus::Basic)?,
                    high: required(m, Subcorpus::Complex)?,
                    not: required(m, Subcorpus::Unrelated)?,
                    cited: mean_of(m, Subcorpus::Cited),
                    pearson: None,
                })
            })
            .collect::<Result<Vec<_>, EvalError>>()?;
        Ok(ScoreTable {
            rows,
            reference: None,
            correlation: None,
        })
    }

    pub fn row(&self, metric: &str) -> Option<&ScoreRow> {
        self.rows.iter().find(|r| r.metric == metric)
    }

    pub fn apply_correlation(&mut self, correlation: &Correlation) {
        for row in &mut self.rows {
            row.pearson = correlation
                .per_metric
                .iter()
                .find(|(m, _)| m.id() == row.metric)
                .map(|&(_, r)| r);
        }
        self.reference = Some(correlation.reference.clone());
        self.correlation = Some(correlation.matrix.clone());
    }
}

pub fn subcorpus_means(corpus: &Corpus, metrics: &[MetricId], scorer: &Scorer) -> Result<ScoreTable, EvalError> {
    ScoreTable::from_scores(&score_corpus(corpus, metrics, scorer)?)
}

/// What each metric is correlated against for the table's pearson column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// Per-document mean of all metrics as similarities (distances via
    /// `1 / (1 + d)`).
    Mean,
    Metric(MetricId),
}

impl Reference {
    pub fn parse(s: &str) -> Result<Reference, EvalError> {
        if s == "mean" {
            Ok(Reference::Mean)
        } else {
            Ok(Reference::Metric(s.parse()?))
        }
    }

    pub fn label(self) -> String {
        match self {
            Reference::Mean => "mean".to_owned(),
            Reference::Metric(m) => m.id().to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    pub reference: String,
    pub per_metric: Vec<(MetricId, f64)>,
    /// Pairwise coefficients over raw scores.
    pub matrix: CorrelationMatrix,
}

pub fn correlation_analysis(
    per_doc: &[(MetricId, Vec<f64>)],
    reference: Reference,
) -> Result<Correlation, EvalError> {
    let profile: Vec<f64> = match reference {
        Reference::Metric(m) => per_doc
            .iter()
            .find(|(x, _)| *x == m)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| EvalError::MissingReference(m.id().to_owned()))?,
        Reference::Mean => {
            let docs = per_doc.first().map_or(0, |(_, v)| v.len());
            (0..docs)
                .map(|d| {
                    let sims: Vec<f64> = per_doc
                        .iter()
                        .map(|(m, v)| match m.kind() {
                            MetricKind::Similarity => v[d],
                            MetricKind::Distance => distance_to_similarity(v[d]),
                        })
                        .collect();
                    mean(&sims).unwrap_or(0.0)
                })
                .collect()
        }
    };
    let per_metric = per_doc
        .iter()
        .map(|(m, v)| Ok((*m, pearson(v, &profile)?)))
        .collect::<Result<Vec<_>, EvalError>>()?;
    let mut values = vec![vec![0.0; per_doc.len()]; per_doc.len()];
    for i in 0..per_doc.len() {
        for j in i..per_doc.len() {
            let r = pearson(&per_doc[i].1, &per_doc[j].1)?;
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(Correlation {
        reference: reference.label(),
        per_metric,
        matrix: CorrelationMatrix {
            metrics: per_doc.iter().map(|(m, _)| m.id().to_owned()).collect(),
            values,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParaphraseLevel {
    SameOrBasic,
    Paraphrase,
    Different,
}

impl ParaphraseLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            ParaphraseLevel::SameOrBasic => "same_or_basic",
            ParaphraseLevel::Paraphrase => "paraphrase",
            ParaphraseLevel::Different => "different",
        }
    }
}

pub fn classify_paraphrase_level(score: f64, t_low: f64, t_high: f64) -> Result<ParaphraseLevel, EvalError> {
    if !(0.0 <= t_low && t_low < t_high && t_high <= 1.0) {
        return Err(EvalError::InvalidThresholds(t_low, t_high));
    }
    Ok(if score >= t_high {
        ParaphraseLevel::SameOrBasic
    } else if score >= t_low {
        ParaphraseLevel::Paraphrase
    } else {
        ParaphraseLevel::Different
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<ReportFormat> {
        match s {
            "csv" => Some(ReportFormat::Csv),
            "json" => Some(ReportFormat::Json),
            _ => None,
        }
    }
}

pub const CSV_HEADER: &str = "metric,low,high,not,pearson";

/// Fixed five-decimal formatting; never prints `-0.00000`.
pub fn fixed5(v: f64) -> String {
    let s = format!("{v:.5}");
    if s == "-0.00000" {
        "0.00000".to_owned()
    } else {
        s
    }
}

pub fn emit_report(table: &ScoreTable, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for row in &table.rows {
                let pearson = row.pearson.map(fixed5).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.metric,
                    fixed5(row.low),
                    fixed5(row.high),
                    fixed5(row.not),
                    pearson
                ));
            }
            out.into_bytes()
        }
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(table).expect("score table serializes");
            out.push('\n');
            out.into_bytes()
        }
    }
}

pub fn parse_json_report(bytes: &[u8]) -> Result<ScoreTable, serde_json::Error> {
    serde_json::from_slice(bytes)
}

/// `subcorpus,document,<metric ids…>` with one line per document.
pub fn emit_document_scores(scores: &DocumentScores) -> Vec<u8> {
    let mut out = String::from("subcorpus,document");
    for m in &scores.metrics {
        out.push(',');
        out.push_str(m.id());
    }
    out.push('\n');
    for ((sub, name), row) in scores.documents.iter().zip(&scores.values) {
        out.push_str(sub.label());
        out.push(',');
        out.push_str(name);
        for v in row {
            out.push(',');
            out.push_str(&fixed5(*v));
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Square CSV of pairwise coefficients with a `metric` header column.
pub fn emit_correlation_matrix(matrix: &CorrelationMatrix) -> Vec<u8> {
    let mut out = String::from("metric");
    for m in &matrix.metrics {
        out.push(',');
        out.push_str(m);
    }
    out.push('\n');
    for (m, row) in matrix.metrics.iter().zip(&matrix.values) {
        out.push_str(m);
        for v in row {
            out.push(',');
            out.push_str(&fixed5(*v));
        }
        out.push('\n');
    }
    out.into_bytes()
}
