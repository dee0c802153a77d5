//! Vector-space measures over term vectors and term sets.
//!
//! `cosine`, `dice` and `jaccard` are similarities in `[0, 1]`; `euclidean`
//! and `manhattan` are distances computed over the union of terms, optionally
//! after scaling both vectors to unit L2 norm.

use crate::textproc::{TermSet, TermVector};

/// Dot product over the L2 norms. Zero when either vector is empty.
pub fn cosine(v1: &TermVector, v2: &TermVector) -> f64 {
    let (n1, n2) = (v1.norm(), v2.norm());
    if n1 == 0.0 || n2 == 0.0 {
        return 0.0;
    }
    // iterate the smaller vector
    let (small, large) = if v1.dimension() <= v2.dimension() {
        (v1, v2)
    } else {
        (v2, v1)
    };
    let dot: f64 = small.iter().map(|(t, w)| w * large.weight(t)).sum();
    (dot / (n1 * n2)).clamp(0.0, 1.0)
}

/// `2·|common| / (|s1| + |s2|)`; two empty sets score 1.
pub fn dice(s1: &TermSet, s2: &TermSet) -> f64 {
    let total = s1.len() + s2.len();
    if total == 0 {
        return 1.0;
    }
    2.0 * s1.intersection_len(s2) as f64 / total as f64
}

/// `|common| / |union|`; two empty sets score 1.
pub fn jaccard(s1: &TermSet, s2: &TermSet) -> f64 {
    let common = s1.intersection_len(s2);
    let union = s1.len() + s2.len() - common;
    if union == 0 {
        return 1.0;
    }
    common as f64 / union as f64
}

pub fn euclidean(v1: &TermVector, v2: &TermVector, pre_normalize: bool) -> f64 {
    differences(v1, v2, pre_normalize)
        .map(|d| d * d)
        .sum::<f64>()
        .sqrt()
}

pub fn manhattan(v1: &TermVector, v2: &TermVector, pre_normalize: bool) -> f64 {
    differences(v1, v2, pre_normalize).map(f64::abs).sum()
}

/// Per-term differences over the union of both vectors' terms.
fn differences(
    v1: &TermVector,
    v2: &TermVector,
    pre_normalize: bool,
) -> impl Iterator<Item = f64> {
    let (a, b) = if pre_normalize {
        (v1.normalized(), v2.normalized())
    } else {
        (v1.clone(), v2.clone())
    };
    let mut diffs: Vec<f64> = a.iter().map(|(t, w)| w - b.weight(t)).collect();
    diffs.extend(b.iter().filter(|(t, _)| a.weight(t) == 0.0).map(|(_, w)| w));
    diffs.into_iter()
}
