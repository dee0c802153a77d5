//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed validation or processing error,
//! 2 usage error. Results go to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::alignment::{
    parse_alignment, parse_map_lines, serialize_alignment, serialize_map_lines, validate_rules, RuleLevel,
};
use crate::config::{ConfigError, Settings, CONFIG_ENV};
use crate::evalreport::{
    self, classify_paraphrase_level, emit_correlation_matrix, emit_document_scores, emit_report,
    fixed5, read_document, Reference, ReportFormat,
};
use crate::matcher::{build_matrix, predict_alignment, score_alignment};
use crate::metric::{MetricError, MetricId, Scorer};
use crate::textproc::{segment_phrases, PhraseDocument, SegmentMode};

#[derive(Debug, Parser)]
#[command(name = "parasim", version, about = "Text similarity, phrase alignment and corpus evaluation")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Config file of `key = value` lines (default: $PARASIM_CONFIG)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Stopword list: a file path, `default`, or `none`
    #[arg(long, global = true, value_name = "PATH")]
    stopwords: Option<String>,
    /// Enable the light suffix-stripping stemmer
    #[arg(long, global = true)]
    stem: bool,
    /// Gram unit for the n-gram metrics: word or char
    #[arg(long, global = true, value_name = "UNIT")]
    unit: Option<String>,
    /// Override any config key (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score two documents against each other
    Sim {
        /// Reference (source) document
        a: PathBuf,
        /// Candidate document
        b: PathBuf,
        /// Metric id, comma-separated ids, or `all`
        #[arg(long, default_value = "all")]
        metric: String,
        /// Segment free text at sentence ends instead of reading one phrase per line
        #[arg(long)]
        sentences: bool,
        /// Append a paraphrase level (same_or_basic / paraphrase / different)
        #[arg(long)]
        classify: bool,
    },
    /// Evaluate a corpus directory and emit a score table
    CorpusEval {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value = "all")]
        metrics: String,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Correlation reference: `mean` or a metric id
        #[arg(long)]
        reference: Option<String>,
        /// Also write per-document scores as CSV
        #[arg(long, value_name = "FILE")]
        per_doc: Option<PathBuf>,
        /// Also write the pairwise correlation matrix as CSV
        #[arg(long, value_name = "FILE")]
        matrix: Option<PathBuf>,
    },
    /// Predict phrase links and score them against a gold map
    AlignEval {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long, default_value = "cosine")]
        metric: String,
        #[arg(long)]
        threshold: Option<f64>,
        /// Print the predicted map after the scores
        #[arg(long)]
        show_map: bool,
    },
    /// Check a paraphrase against the structural rules of its level
    Validate {
        #[arg(long)]
        level: String,
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Print a map file in canonical form
    ParseMap {
        file: PathBuf,
        /// Number of source phrases; requires every source line to be present
        #[arg(long, requires = "targets")]
        sources: Option<usize>,
        /// Number of target phrases
        #[arg(long, requires = "sources")]
        targets: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => Failure::Failed(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<MetricError> for Failure {
    fn from(e: MetricError) -> Self {
        match e {
            MetricError::UnknownMetric(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

fn failed(e: impl std::fmt::Display) -> Failure {
    Failure::Failed(e.to_string())
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn settings(global: &GlobalArgs) -> Result<Settings, Failure> {
    let mut s = Settings::default();
    let config = global
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    if let Some(path) = config {
        s.apply_file(&path)?;
    }
    if let Some(sw) = &global.stopwords {
        s.set("stopwords", sw, None)?;
    }
    if global.stem {
        s.stem = true;
    }
    if let Some(unit) = &global.unit {
        s.set("unit", unit, None)?;
    }
    for o in &global.overrides {
        s.apply_override(o)?;
    }
    Ok(s)
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn load_doc(path: &Path, mode: SegmentMode) -> Result<PhraseDocument, Failure> {
    match mode {
        SegmentMode::Line => read_document(path).map_err(failed),
        SegmentMode::Sentence => {
            let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            segment_phrases(id, &read_text(path)?, mode).map_err(failed)
        }
    }
}

fn write_stdout(out: &mut dyn Write, bytes: &[u8]) -> Result<(), Failure> {
    out.write_all(bytes).map_err(failed)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let settings = settings(&cli.global)?;
    let scorer = settings.scorer()?;
    let _ = writeln!(err, "config fingerprint: {}", settings.fingerprint()?);

    match cli.command {
        Command::Sim {
            a,
            b,
            metric,
            sentences,
            classify,
        } => {
            let metrics = MetricId::parse_list(&metric)?;
            let mode = if sentences { SegmentMode::Sentence } else { SegmentMode::Line };
            let (da, db) = (load_doc(&a, mode)?, load_doc(&b, mode)?);
            sim(&scorer, &settings, &metrics, &da, &db, classify, out)?;
            Ok(0)
        }
        Command::CorpusEval {
            corpus,
            metrics,
            out: out_path,
            format,
            reference,
            per_doc,
            matrix,
        } => {
            let metrics = MetricId::parse_list(&metrics)?;
            let format = ReportFormat::parse(&format)
                .ok_or_else(|| Failure::Usage(format!("unknown format `{format}` (csv or json)")))?;
            let reference = Reference::parse(reference.as_deref().unwrap_or(&settings.reference))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let corpus = evalreport::load_corpus(&corpus).map_err(failed)?;
            let eval = evalreport::evaluate_corpus(&corpus, &metrics, &scorer, reference).map_err(failed)?;
            let report = emit_report(&eval.table, format);
            match out_path {
                Some(p) => write_file(&p, &report)?,
                None => write_stdout(out, &report)?,
            }
            if let Some(p) = per_doc {
                write_file(&p, &emit_document_scores(&eval.scores))?;
            }
            if let Some(p) = matrix {
                write_file(&p, &emit_correlation_matrix(&eval.correlation.matrix))?;
            }
            Ok(0)
        }
        Command::AlignEval {
            source,
            target,
            gold,
            metric,
            threshold,
            show_map,
        } => {
            let metric: MetricId = metric.parse()?;
            let threshold = threshold.unwrap_or(settings.threshold);
            if !(0.0..=1.0).contains(&threshold) {
                return Err(Failure::Usage(format!("threshold {threshold} outside [0, 1]")));
            }
            let src = load_doc(&source, SegmentMode::Line)?;
            let tgt = load_doc(&target, SegmentMode::Line)?;
            let gold = parse_alignment(&read_text(&gold)?, src.len(), tgt.len())
                .map_err(|e| failed(format!("{}: {e}", gold.display())))?;
            let matrix = build_matrix(&src, &tgt, metric, &scorer).map_err(failed)?;
            let predicted = predict_alignment(&matrix, threshold).map_err(failed)?;
            let report = score_alignment(&predicted, &gold).map_err(failed)?;
            let mut text = format!(
                "precision {}\nrecall {}\nf1 {}\nlinks_predicted {}\nlinks_gold {}\nlinks_correct {}\n",
                fixed5(report.precision),
                fixed5(report.recall),
                fixed5(report.f1),
                report.predicted_links.len(),
                report.true_links.len(),
                report.correct()
            );
            if show_map {
                text.push_str(&serialize_alignment(&predicted));
            }
            write_stdout(out, text.as_bytes())?;
            Ok(0)
        }
        Command::Validate {
            level,
            source,
            target,
            map,
        } => {
            let level = RuleLevel::parse(&level)
                .ok_or_else(|| Failure::Usage(format!("unknown level `{level}` (basic or complex)")))?;
            let src = load_doc(&source, SegmentMode::Line)?;
            let tgt = load_doc(&target, SegmentMode::Line)?;
            let map = parse_alignment(&read_text(&map)?, src.len(), tgt.len())
                .map_err(|e| failed(format!("{}: {e}", map.display())))?;
            let violations = validate_rules(&map, &src, &tgt, level).map_err(failed)?;
            let mut text = String::new();
            for v in &violations {
                text.push_str(&v.to_string());
                text.push('\n');
            }
            write_stdout(out, text.as_bytes())?;
            if violations.is_empty() {
                let _ = writeln!(err, "no violations");
                Ok(0)
            } else {
                let _ = writeln!(err, "{} violation(s)", violations.len());
                Ok(1)
            }
        }
        Command::ParseMap {
            file,
            sources,
            targets,
        } => {
            let text = read_text(&file)?;
            let canonical = match (sources, targets) {
                (Some(s), Some(t)) => parse_alignment(&text, s, t).map(|m| serialize_alignment(&m)),
                _ => parse_map_lines(&text).map(|lines| serialize_map_lines(&lines)),
            }
            .map_err(|e| failed(format!("{}: {e}", file.display())))?;
            write_stdout(out, canonical.as_bytes())?;
            Ok(0)
        }
    }
}

fn sim(
    scorer: &Scorer,
    settings: &Settings,
    metrics: &[MetricId],
    a: &PhraseDocument,
    b: &PhraseDocument,
    classify: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let (ta, tb) = (scorer.document_tokens(a), scorer.document_tokens(b));
    let mut text = String::new();
    for &m in metrics {
        let score = scorer.score_tokens(m, &ta, &tb)?;
        text.push_str(&format!("{} {}", m.id(), fixed5(score)));
        if classify {
            // distances are classified on 1 / (1 + d)
            let sim = scorer.similarity_tokens(m, &ta, &tb)?;
            let level = classify_paraphrase_level(sim, settings.t_low, settings.t_high)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            text.push(' ');
            text.push_str(level.as_str());
        }
        text.push('\n');
    }
    write_stdout(out, text.as_bytes())
}
