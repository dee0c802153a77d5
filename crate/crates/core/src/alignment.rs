//! Gold phrase-alignment maps.
//!
//! A map file has one line per source phrase:
//!
//! ```text
//! 0 : 29        source 0 is found in target 29
//! 2:            source 2 was removed
//! 13 : 11,12    source 13 was split into targets 11 and 12
//! ```
//!
//! Target indices that appear on no line are phrases added by the
//! paraphrase. Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::textproc::PhraseDocument;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlignmentError {
    #[error("line {line}: syntax error: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("line {line}: index {index} out of range (must be < {bound})")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        bound: usize,
    },
    #[error("line {line}: source {source_index} listed more than once")]
    DuplicateSource { line: usize, source_index: usize },
    #[error("line {line}: target {target} listed twice for the same source")]
    DuplicateTarget { line: usize, target: usize },
    #[error("no line for source phrase {0}")]
    MissingSource(usize),
    #[error(
        "map covers {map_sources} source / {map_targets} target phrases but documents have {doc_sources} / {doc_targets}"
    )]
    InconsistentCounts {
        map_sources: usize,
        map_targets: usize,
        doc_sources: usize,
        doc_targets: usize,
    },
}

/// One parsed map line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapLine {
    pub line: usize,
    pub source: usize,
    pub targets: Vec<usize>,
}

/// Complete mapping from every source phrase to its (sorted) target phrases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentMap {
    targets: Vec<Vec<usize>>,
    target_count: usize,
}

impl AlignmentMap {
    /// `targets[i]` lists the target phrases of source `i`. Target lists are
    /// sorted; duplicates and out-of-range indices are rejected.
    pub fn new(targets: Vec<Vec<usize>>, target_count: usize) -> Result<Self, AlignmentError> {
        let mut out = Vec::with_capacity(targets.len());
        for (source, mut list) in targets.into_iter().enumerate() {
            list.sort_unstable();
            for pair in list.windows(2) {
                if pair[0] == pair[1] {
                    return Err(AlignmentError::DuplicateTarget {
                        line: source,
                        target: pair[0],
                    });
                }
            }
            if let Some(&bad) = list.iter().find(|&&t| t >= target_count) {
                return Err(AlignmentError::IndexOutOfRange {
                    line: source,
                    index: bad,
                    bound: target_count,
                });
            }
            out.push(list);
        }
        Ok(AlignmentMap {
            targets: out,
            target_count,
        })
    }

    /// Builds a map from `(source, target)` links; sources without links are
    /// deletions.
    pub fn from_links<I>(links: I, source_count: usize, target_count: usize) -> Result<Self, AlignmentError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut sets = vec![BTreeSet::new(); source_count];
        for (s, t) in links {
            if s >= source_count {
                return Err(AlignmentError::IndexOutOfRange {
                    line: s,
                    index: s,
                    bound: source_count,
                });
            }
            sets[s].insert(t);
        }
        AlignmentMap::new(
            sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            target_count,
        )
    }

    pub fn source_count(&self) -> usize {
        self.targets.len()
    }

    pub fn target_count(&self) -> usize {
        self.target_count
    }

    pub fn targets(&self, source: usize) -> &[usize] {
        &self.targets[source]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.targets.iter().enumerate().map(|(s, t)| (s, t.as_slice()))
    }

    /// All `(source, target)` pairs.
    pub fn links(&self) -> BTreeSet<(usize, usize)> {
        self.iter()
            .flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)))
            .collect()
    }
}

/// Parses map lines without checking them against document sizes.
pub fn parse_map_lines(text: &str) -> Result<Vec<MapLine>, AlignmentError> {
    let mut lines = Vec::new();
    let mut seen = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let parsed = parse_line(body, line_no)?;
        if seen.insert(parsed.source, line_no).is_some() {
            return Err(AlignmentError::DuplicateSource {
                line: line_no,
                source_index: parsed.source,
            });
        }
        lines.push(parsed);
    }
    Ok(lines)
}

fn parse_line(body: &str, line: usize) -> Result<MapLine, AlignmentError> {
    let syntax = |message: &str| AlignmentError::SyntaxError {
        line,
        message: message.to_owned(),
    };
    let (lhs, rhs) = body.split_once(':').ok_or_else(|| syntax("missing ':'"))?;
    let source = parse_index(lhs.trim(), line)?;
    let rhs = rhs.trim();
    let mut targets = Vec::new();
    if !rhs.is_empty() {
        for item in rhs.split(',') {
            let target = parse_index(item.trim(), line)?;
            if targets.contains(&target) {
                return Err(AlignmentError::DuplicateTarget { line, target });
            }
            targets.push(target);
        }
    }
    targets.sort_unstable();
    Ok(MapLine {
        line,
        source,
        targets,
    })
}

fn parse_index(token: &str, line: usize) -> Result<usize, AlignmentError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(AlignmentError::SyntaxError {
            line,
            message: format!("expected a phrase number, found `{token}`"),
        });
    }
    token.parse().map_err(|_| AlignmentError::SyntaxError {
        line,
        message: format!("phrase number `{token}` is too large"),
    })
}

/// Parses a complete map: every source in `[0, source_count)` must appear
/// exactly once and every index must be in range.
pub fn parse_alignment(
    text: &str,
    source_count: usize,
    target_count: usize,
) -> Result<AlignmentMap, AlignmentError> {
    let mut targets: Vec<Option<Vec<usize>>> = vec![None; source_count];
    for entry in parse_map_lines(text)? {
        if entry.source >= source_count {
            return Err(AlignmentError::IndexOutOfRange {
                line: entry.line,
                index: entry.source,
                bound: source_count,
            });
        }
        if let Some(&bad) = entry.targets.iter().find(|&&t| t >= target_count) {
            return Err(AlignmentError::IndexOutOfRange {
                line: entry.line,
                index: bad,
                bound: target_count,
            });
        }
        targets[entry.source] = Some(entry.targets);
    }
    let targets = targets
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or(AlignmentError::MissingSource(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlignmentMap {
        targets,
        target_count,
    })
}

/// Canonical form: `<src>: t1,t2`, sources and targets ascending.
pub fn serialize_alignment(map: &AlignmentMap) -> String {
    serialize_entries(map.iter())
}

/// Canonical form of a possibly partial set of lines.
pub fn serialize_map_lines(lines: &[MapLine]) -> String {
    let mut sorted: Vec<&MapLine> = lines.iter().collect();
    sorted.sort_by_key(|l| l.source);
    serialize_entries(sorted.into_iter().map(|l| (l.source, l.targets.as_slice())))
}

fn serialize_entries<'a>(entries: impl Iterator<Item = (usize, &'a [usize])>) -> String {
    let mut out = String::new();
    for (source, targets) in entries {
        out.push_str(&source.to_string());
        out.push(':');
        if !targets.is_empty() {
            out.push(' ');
            let list: Vec<String> = targets.iter().map(usize::to_string).collect();
            out.push_str(&list.join(","));
        }
        out.push('\n');
    }
    out
}

/// Structural reading of a map. Categories are not exclusive: a pair of
/// exchanged phrases also shows up as splits and merges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkClassification {
    pub deleted: BTreeSet<usize>,
    /// target → the two or more sources merged into it
    pub merges: BTreeMap<usize, BTreeSet<usize>>,
    /// source → the two or more targets it was split into
    pub splits: BTreeMap<usize, BTreeSet<usize>>,
    /// source pairs `(a, b)`, `a < b`, sharing at least two targets
    pub exchanges: BTreeSet<(usize, usize)>,
    pub added: BTreeSet<usize>,
    pub referenced: BTreeSet<usize>,
}

pub fn classify_links(map: &AlignmentMap) -> LinkClassification {
    let mut c = LinkClassification::default();
    let mut sources_of: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (s, targets) in map.iter() {
        if targets.is_empty() {
            c.deleted.insert(s);
        }
        if targets.len() >= 2 {
            c.splits.insert(s, targets.iter().copied().collect());
        }
        for &t in targets {
            sources_of.entry(t).or_default().insert(s);
        }
    }
    c.referenced = sources_of.keys().copied().collect();
    c.added = (0..map.target_count())
        .filter(|t| !c.referenced.contains(t))
        .collect();
    c.merges = sources_of
        .into_iter()
        .filter(|(_, sources)| sources.len() >= 2)
        .collect();
    let multi: Vec<usize> = c.splits.keys().copied().collect();
    for (i, &a) in multi.iter().enumerate() {
        for &b in &multi[i + 1..] {
            let shared = c.splits[&a].intersection(&c.splits[&b]).count();
            if shared >= 2 {
                c.exchanges.insert((a, b));
            }
        }
    }
    c
}

/// Structural paraphrase level and its budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleLevel {
    Basic,
    Complex,
}

impl RuleLevel {
    pub const BASIC_LENGTH_CHANGE: usize = 1;
    pub const COMPLEX_ADDITIONS: usize = 5;
    pub const COMPLEX_DELETIONS: usize = 5;

    pub fn parse(s: &str) -> Option<RuleLevel> {
        match s {
            "basic" => Some(RuleLevel::Basic),
            "complex" => Some(RuleLevel::Complex),
            _ => None,
        }
    }

    pub fn exchanges_allowed(self) -> bool {
        matches!(self, RuleLevel::Complex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    UnalteredPhrase { source: usize, target: usize },
    AdditionBudget { found: usize, limit: usize },
    DeletionBudget { found: usize, limit: usize },
    /// additions plus deletions at the basic level
    LengthChangeBudget { found: usize, limit: usize },
    ExchangeForbidden { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnalteredPhrase { source, target } => {
                write!(f, "unaltered-phrase source={source} target={target}")
            }
            Violation::AdditionBudget { found, limit } => {
                write!(f, "addition-budget found={found} limit={limit}")
            }
            Violation::DeletionBudget { found, limit } => {
                write!(f, "deletion-budget found={found} limit={limit}")
            }
            Violation::LengthChangeBudget { found, limit } => {
                write!(f, "length-change-budget found={found} limit={limit}")
            }
            Violation::ExchangeForbidden { first, second } => {
                write!(f, "exchange-forbidden sources={first},{second}")
            }
        }
    }
}

/// Checks a paraphrase against the structural rules of its level.
pub fn validate_rules(
    map: &AlignmentMap,
    source_doc: &PhraseDocument,
    target_doc: &PhraseDocument,
    level: RuleLevel,
) -> Result<Vec<Violation>, AlignmentError> {
    if map.source_count() != source_doc.len() || map.target_count() != target_doc.len() {
        return Err(AlignmentError::InconsistentCounts {
            map_sources: map.source_count(),
            map_targets: map.target_count(),
            doc_sources: source_doc.len(),
            doc_targets: target_doc.len(),
        });
    }
    let mut violations = Vec::new();

    let mut by_text: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, phrase) in source_doc.phrases().iter().enumerate() {
        by_text.entry(phrase.trim()).or_default().push(i);
    }
    for (j, phrase) in target_doc.phrases().iter().enumerate() {
        if let Some(sources) = by_text.get(phrase.trim()) {
            violations.extend(sources.iter().map(|&source| Violation::UnalteredPhrase {
                source,
                target: j,
            }));
        }
    }

    let links = classify_links(map);
    let (added, deleted) = (links.added.len(), links.deleted.len());
    match level {
        RuleLevel::Basic => {
            let limit = RuleLevel::BASIC_LENGTH_CHANGE;
            if added + deleted > limit {
                violations.push(if deleted == 0 {
                    Violation::AdditionBudget { found: added, limit }
                } else if added == 0 {
                    Violation::DeletionBudget {
                        found: deleted,
                        limit,
                    }
                } else {
                    Violation::LengthChangeBudget {
                        found: added + deleted,
                        limit,
                    }
                });
            }
        }
        RuleLevel::Complex => {
            if added > RuleLevel::COMPLEX_ADDITIONS {
                violations.push(Violation::AdditionBudget {
                    found: added,
                    limit: RuleLevel::COMPLEX_ADDITIONS,
                });
            }
            if deleted > RuleLevel::COMPLEX_DELETIONS {
                violations.push(Violation::DeletionBudget {
                    found: deleted,
                    limit: RuleLevel::COMPLEX_DELETIONS,
                });
            }
        }
    }
    if !level.exchanges_allowed() {
        violations.extend(
            links
                .exchanges
                .iter()
                .map(|&(first, second)| Violation::ExchangeForbidden { first, second }),
        );
    }
    violations.sort();
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(phrases: &[&str]) -> PhraseDocument {
        PhraseDocument::new("d", phrases.iter().copied()).unwrap()
    }

    #[test]
    fn parses_single_target() {
        let mut text = String::from("0 : 29\n");
        let map = parse_alignment(&text, 1, 30).unwrap();
        assert_eq!(map.targets(0), [29]);
        text.push_str("# trailing comment\n\n");
        assert_eq!(parse_alignment(&text, 1, 30).unwrap(), map);
    }

    #[test]
    fn parses_deletion_and_split() {
        let text = "0: 0\n1: 1\n2:\n";
        let map = parse_alignment(text, 3, 2).unwrap();
        assert!(map.targets(2).is_empty());
        let map = parse_alignment("0 : 11,12\n", 1, 13).unwrap();
        assert_eq!(map.targets(0), [11, 12]);
    }

    #[test]
    fn whitespace_variants_agree() {
        let a = parse_alignment("0:0\n1:1\n", 2, 2).unwrap();
        let b = parse_alignment("0 : 0\n1 :\t1\r\n", 2, 2).unwrap();
        let c = parse_alignment("  0:\t0  \n1: 1", 2, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn targets_are_sorted_on_parse() {
        let map = parse_alignment("0: 3, 1 ,2\n", 1, 4).unwrap();
        assert_eq!(map.targets(0), [1, 2, 3]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_alignment("0 29\n", 1, 30),
            Err(AlignmentError::SyntaxError { line: 1, .. })
        ));
        assert!(matches!(
            parse_alignment("0: 1,\n", 1, 2),
            Err(AlignmentError::SyntaxError { line: 1, .. })
        ));
        assert!(matches!(
            parse_alignment("x: 1\n", 1, 2),
            Err(AlignmentError::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_alignment("0: -1\n", 1, 2),
            Err(AlignmentError::SyntaxError { .. })
        ));
        assert_eq!(
            parse_alignment("0: 5\n", 1, 2),
            Err(AlignmentError::IndexOutOfRange {
                line: 1,
                index: 5,
                bound: 2
            })
        );
        assert_eq!(
            parse_alignment("0: 0\n3: 1\n", 2, 2),
            Err(AlignmentError::IndexOutOfRange {
                line: 2,
                index: 3,
                bound: 2
            })
        );
        assert_eq!(
            parse_alignment("0: 0\n0: 1\n", 1, 2),
            Err(AlignmentError::DuplicateSource {
                line: 2,
                source_index: 0
            })
        );
        assert_eq!(
            parse_alignment("0: 0\n", 2, 2),
            Err(AlignmentError::MissingSource(1))
        );
        assert_eq!(
            parse_alignment("0: 1,1\n", 1, 2),
            Err(AlignmentError::DuplicateTarget { line: 1, target: 1 })
        );
    }

    #[test]
    fn serialize_is_canonical() {
        let map = AlignmentMap::new(vec![vec![29]], 30).unwrap();
        assert_eq!(serialize_alignment(&map), "0: 29\n");
        let map = AlignmentMap::new(vec![vec![0], vec![], vec![2, 1]], 3).unwrap();
        assert_eq!(serialize_alignment(&map), "0: 0\n1:\n2: 1,2\n");
    }

    #[test]
    fn partial_lines_serialize_in_source_order() {
        let lines = parse_map_lines("4 :1\n3:1\n").unwrap();
        assert_eq!(serialize_map_lines(&lines), "3: 1\n4: 1\n");
    }

    #[test]
    fn classify_merge() {
        let map = AlignmentMap::new(vec![vec![0], vec![1], vec![1]], 2).unwrap();
        let c = classify_links(&map);
        assert_eq!(c.merges.len(), 1);
        assert_eq!(c.merges[&1], BTreeSet::from([1, 2]));
        assert!(c.splits.is_empty() && c.exchanges.is_empty() && c.added.is_empty());
    }

    #[test]
    fn classify_added() {
        let map = AlignmentMap::new(vec![vec![0], vec![1], vec![2]], 4).unwrap();
        let c = classify_links(&map);
        assert_eq!(c.added, BTreeSet::from([3]));
        assert_eq!(c.referenced.len() + c.added.len(), 4);
    }

    #[test]
    fn classify_exchange() {
        let map = AlignmentMap::new(vec![vec![0], vec![1, 2], vec![1, 2]], 3).unwrap();
        let c = classify_links(&map);
        assert_eq!(c.exchanges, BTreeSet::from([(1, 2)]));
        assert!(c.splits.contains_key(&1) && c.splits.contains_key(&2));
        assert_eq!(c.merges.len(), 2);
    }

    #[test]
    fn unaltered_phrase_is_reported() {
        let src = doc(&["Eins ist hier.", "Zwei ist da."]);
        let tgt = doc(&["  Eins ist hier. ", "Zwei war da."]);
        let map = AlignmentMap::new(vec![vec![0], vec![1]], 2).unwrap();
        let v = validate_rules(&map, &src, &tgt, RuleLevel::Complex).unwrap();
        assert_eq!(v, [Violation::UnalteredPhrase { source: 0, target: 0 }]);
    }

    #[test]
    fn basic_budget() {
        let src = doc(&["a"]);
        let tgt = doc(&["b", "c", "d"]);
        let map = AlignmentMap::new(vec![vec![0]], 3).unwrap();
        assert_eq!(
            validate_rules(&map, &src, &tgt, RuleLevel::Basic).unwrap(),
            [Violation::AdditionBudget { found: 2, limit: 1 }]
        );
        assert!(validate_rules(&map, &src, &tgt, RuleLevel::Complex)
            .unwrap()
            .is_empty());

        let src = doc(&["a", "b"]);
        let tgt = doc(&["c", "d"]);
        let map = AlignmentMap::new(vec![vec![0], vec![]], 2).unwrap();
        assert_eq!(
            validate_rules(&map, &src, &tgt, RuleLevel::Basic).unwrap(),
            [Violation::LengthChangeBudget { found: 2, limit: 1 }]
        );
    }

    #[test]
    fn inconsistent_counts() {
        let map = AlignmentMap::new(vec![vec![0]], 1).unwrap();
        assert!(matches!(
            validate_rules(&map, &doc(&["a", "b"]), &doc(&["c"]), RuleLevel::Basic),
            Err(AlignmentError::InconsistentCounts { .. })
        ));
    }
}
