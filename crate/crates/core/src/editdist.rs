//! Edit-distance style measures: Levenshtein over any comparable elements,
//! Jaro, and Jaro-Winkler.
//!
//! All functions take slices so the same code serves characters
//! (`&[char]`) and word tokens (`&[String]`).

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EditError {
    #[error("invalid Jaro-Winkler parameters: {0}")]
    InvalidParams(String),
}

/// Jaro-Winkler tuning. Defaults are Winkler's classical values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EditParams {
    pub jw_prefix_weight: f64,
    pub jw_boost_threshold: f64,
    pub jw_max_prefix: usize,
}

impl Default for EditParams {
    fn default() -> Self {
        EditParams {
            jw_prefix_weight: 0.1,
            jw_boost_threshold: 0.7,
            jw_max_prefix: 4,
        }
    }
}

impl EditParams {
    pub fn validate(&self) -> Result<(), EditError> {
        let p = self.jw_prefix_weight;
        if !(0.0..=0.25).contains(&p) {
            return Err(EditError::InvalidParams(format!(
                "prefix weight {p} outside [0, 0.25]"
            )));
        }
        if p * self.jw_max_prefix as f64 > 1.0 {
            return Err(EditError::InvalidParams(format!(
                "prefix weight {p} times max prefix {} exceeds 1",
                self.jw_max_prefix
            )));
        }
        if !(0.0..=1.0).contains(&self.jw_boost_threshold) {
            return Err(EditError::InvalidParams(format!(
                "boost threshold {} outside [0, 1]",
                self.jw_boost_threshold
            )));
        }
        Ok(())
    }
}

/// Minimum number of insertions, deletions and substitutions.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.len() < b.len() {
        return levenshtein(b, a);
    }
    // b is the shorter side; one row of |b|+1 cells
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, x) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let above = row[j + 1];
            let cost = usize::from(x != y);
            row[j + 1] = (diag + cost).min(above + 1).min(row[j] + 1);
            diag = above;
        }
    }
    row[b.len()]
}

/// `1 − dist / max(|a|, |b|)`; two empty sequences score 1.
pub fn levenshtein_normalized<T: PartialEq>(a: &[T], b: &[T]) -> f64 {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(a, b) as f64 / longest as f64
}

pub fn jaro<T: PartialEq>(s1: &[T], s2: &[T]) -> f64 {
    if s1.is_empty() && s2.is_empty() {
        return 1.0;
    }
    if s1.is_empty() || s2.is_empty() {
        return 0.0;
    }
    let window = (s1.len().max(s2.len()) / 2).saturating_sub(1);
    let mut matched1 = vec![false; s1.len()];
    let mut matched2 = vec![false; s2.len()];
    let mut matches = 0usize;
    for (i, x) in s1.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(s2.len());
        for j in lo..hi {
            if !matched2[j] && s2[j] == *x {
                matched1[i] = true;
                matched2[j] = true;
                matches += 1;
                break;
            }
        }
    }
    if matches == 0 {
        return 0.0;
    }
    let in_order2 = s2
        .iter()
        .zip(&matched2)
        .filter(|(_, &m)| m)
        .map(|(y, _)| y);
    let out_of_order = s1
        .iter()
        .zip(&matched1)
        .filter(|(_, &m)| m)
        .map(|(x, _)| x)
        .zip(in_order2)
        .filter(|(x, y)| x != y)
        .count();
    let transpositions = out_of_order / 2;
    let m = matches as f64;
    (m / s1.len() as f64 + m / s2.len() as f64 + (m - transpositions as f64) / m) / 3.0
}

pub fn jaro_winkler<T: PartialEq>(s1: &[T], s2: &[T], params: &EditParams) -> Result<f64, EditError> {
    params.validate()?;
    let base = jaro(s1, s2);
    if base <= params.jw_boost_threshold {
        return Ok(base);
    }
    let prefix = s1
        .iter()
        .zip(s2)
        .take(params.jw_max_prefix)
        .take_while(|(x, y)| x == y)
        .count();
    Ok(base + prefix as f64 * params.jw_prefix_weight * (1.0 - base))
}
