//! Run settings: defaults, `key = value` config files, and overrides.
//!
//! ```text
//! # comments start with '#'
//! stopwords = /path/to/list.txt     # or `default` / `none`
//! stem = true
//! skip = 4
//! threshold = 0.2
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::editdist::EditParams;
use crate::metric::{Scorer, ScoringParams};
use crate::ngram::{Counting, OverlapDenominator};
use crate::textproc::{hex_digest, parse_stopword_list, PipelineConfig, Unit, DEFAULT_STOPWORDS};

/// Environment variable naming a config file read when `--config` is absent.
pub const CONFIG_ENV: &str = "PARASIM_CONFIG";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{origin}: line {line}: expected `key = value`")]
    Syntax { origin: String, line: usize },
    #[error("{origin}: unknown key `{key}`")]
    UnknownKey { origin: String, key: String },
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StopwordSource {
    Default,
    None,
    File(PathBuf),
}

pub const KEYS: &[&str] = &[
    "stopwords",
    "lowercase",
    "stem",
    "unit",
    "ngram_n",
    "skip",
    "counting",
    "normalize_distances",
    "overlap_denominator",
    "jw_prefix_weight",
    "jw_boost_threshold",
    "jw_max_prefix",
    "threshold",
    "t_low",
    "t_high",
    "reference",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub stopwords: StopwordSource,
    pub lowercase: bool,
    pub stem: bool,
    pub unit: Unit,
    pub ngram_n: usize,
    pub skip: usize,
    pub counting: Counting,
    pub normalize_distances: bool,
    pub overlap_denominator: OverlapDenominator,
    pub edit: EditParams,
    /// Linking threshold for phrase alignment.
    pub threshold: f64,
    pub t_low: f64,
    pub t_high: f64,
    /// `mean` or a metric id.
    pub reference: String,
}

impl Default for Settings {
    fn default() -> Self {
        let scoring = ScoringParams::default();
        Settings {
            stopwords: StopwordSource::Default,
            lowercase: true,
            stem: false,
            unit: Unit::Word,
            ngram_n: scoring.overlap_n,
            skip: scoring.su_skip,
            counting: scoring.counting,
            normalize_distances: scoring.normalize_distances,
            overlap_denominator: scoring.overlap_denominator,
            edit: scoring.edit,
            threshold: 0.2,
            t_low: 0.3,
            t_high: 0.7,
            reference: "mean".to_owned(),
        }
    }
}

fn invalid(key: &str, value: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_owned(),
        value: value.to_owned(),
        reason: reason.into(),
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(invalid(key, value, "expected true or false")),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| invalid(key, value, "not a number"))
}

fn parse_unit_interval(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = parse_num(key, value)?;
    if !(0.0..=1.0).contains(&v) {
        return Err(invalid(key, value, "must lie in [0, 1]"));
    }
    Ok(v)
}

impl Settings {
    /// Applies one setting. `base` resolves relative stopword paths.
    pub fn set(&mut self, key: &str, value: &str, base: Option<&Path>) -> Result<(), ConfigError> {
        match key {
            "stopwords" => {
                self.stopwords = match value {
                    "default" => StopwordSource::Default,
                    "none" | "" => StopwordSource::None,
                    path => {
                        let p = PathBuf::from(path);
                        StopwordSource::File(match base {
                            Some(dir) if p.is_relative() => dir.join(p),
                            _ => p,
                        })
                    }
                }
            }
            "lowercase" => self.lowercase = parse_bool(key, value)?,
            "stem" => self.stem = parse_bool(key, value)?,
            "unit" => {
                self.unit = Unit::parse(value).ok_or_else(|| invalid(key, value, "expected word or char"))?
            }
            "ngram_n" => {
                let n: usize = parse_num(key, value)?;
                if n == 0 {
                    return Err(invalid(key, value, "must be at least 1"));
                }
                self.ngram_n = n;
            }
            "skip" => self.skip = parse_num(key, value)?,
            "counting" => {
                self.counting =
                    Counting::parse(value).ok_or_else(|| invalid(key, value, "expected clipped or set"))?
            }
            "normalize_distances" => self.normalize_distances = parse_bool(key, value)?,
            "overlap_denominator" => {
                self.overlap_denominator = match value {
                    "max" => OverlapDenominator::Max,
                    "dice" => OverlapDenominator::Dice,
                    _ => return Err(invalid(key, value, "expected max or dice")),
                }
            }
            "jw_prefix_weight" => self.edit.jw_prefix_weight = parse_num(key, value)?,
            "jw_boost_threshold" => self.edit.jw_boost_threshold = parse_unit_interval(key, value)?,
            "jw_max_prefix" => self.edit.jw_max_prefix = parse_num(key, value)?,
            "threshold" => self.threshold = parse_unit_interval(key, value)?,
            "t_low" => self.t_low = parse_unit_interval(key, value)?,
            "t_high" => self.t_high = parse_unit_interval(key, value)?,
            "reference" => self.reference = value.to_owned(),
            _ => {
                return Err(ConfigError::UnknownKey {
                    origin: "override".to_owned(),
                    key: key.to_owned(),
                })
            }
        }
        if key.starts_with("jw_") {
            self.edit
                .validate()
                .map_err(|e| invalid(key, value, e.to_string()))?;
        }
        Ok(())
    }

    /// Applies a config file's text. Unknown keys are errors.
    pub fn apply_text(&mut self, text: &str, origin: &str, base: Option<&Path>) -> Result<(), ConfigError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                origin: origin.to_owned(),
                line: idx + 1,
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey {
                    origin: origin.to_owned(),
                    key: key.to_owned(),
                });
            }
            self.set(key, value.trim(), base)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.apply_text(&text, &path.display().to_string(), path.parent())
    }

    /// Parses `key=value` and applies it.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (key, value) = assignment.split_once('=').ok_or_else(|| ConfigError::Syntax {
            origin: format!("--set {assignment}"),
            line: 1,
        })?;
        self.set(key.trim(), value.trim(), None)
    }

    pub fn pipeline(&self) -> Result<PipelineConfig, ConfigError> {
        let words = match &self.stopwords {
            StopwordSource::Default => parse_stopword_list(DEFAULT_STOPWORDS),
            StopwordSource::None => Vec::new(),
            StopwordSource::File(path) => {
                let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_stopword_list(&text)
            }
        };
        Ok(PipelineConfig::plain()
            .with_lowercase(self.lowercase)
            .with_stopwords(words)
            .with_stem(self.stem)
            .with_unit(self.unit))
    }

    pub fn scorer(&self) -> Result<Scorer, ConfigError> {
        Ok(Scorer::new(
            self.pipeline()?,
            ScoringParams {
                edit: self.edit,
                su_skip: self.skip,
                counting: self.counting,
                normalize_distances: self.normalize_distances,
                overlap_n: self.ngram_n,
                overlap_denominator: self.overlap_denominator,
            },
        ))
    }

    /// Canonical effective configuration, including the stopword checksum.
    pub fn describe(&self) -> Result<String, ConfigError> {
        let mut out = self.scorer()?.describe();
        out.push_str(&format!(
            "threshold={}\nt_low={}\nt_high={}\nreference={}\n",
            self.threshold, self.t_low, self.t_high, self.reference
        ));
        Ok(out)
    }

    pub fn fingerprint(&self) -> Result<String, ConfigError> {
        Ok(hex_digest(self.describe()?.as_bytes())[..16].to_owned())
    }
}
