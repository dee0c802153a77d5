use std::collections::BTreeSet;

use proptest::collection::vec;
use proptest::prelude::*;

use parasim::alignment::{classify_links, parse_alignment, serialize_alignment, AlignmentMap};
use parasim::matcher::{predict_alignment, score_alignment, SimilarityMatrix};

fn map() -> impl Strategy<Value = AlignmentMap> {
    (1usize..8, 1usize..8).prop_flat_map(|(sources, targets)| {
        vec(prop::collection::btree_set(0..targets, 0..3), sources).prop_map(move |lists| {
            AlignmentMap::new(lists.into_iter().map(|s| s.into_iter().collect()).collect(), targets).unwrap()
        })
    })
}

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    (1usize..12).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn serialization_round_trips(m in map()) {
        let text = serialize_alignment(&m);
        let back = parse_alignment(&text, m.source_count(), m.target_count()).unwrap();
        prop_assert_eq!(serialize_alignment(&back), text);
        prop_assert_eq!(back, m);
    }

    #[test]
    fn targets_are_either_added_or_referenced(m in map()) {
        let c = classify_links(&m);
        prop_assert!(c.added.is_disjoint(&c.referenced));
        let all: BTreeSet<usize> = c.added.union(&c.referenced).copied().collect();
        prop_assert_eq!(all, (0..m.target_count()).collect::<BTreeSet<_>>());
        for s in 0..m.source_count() {
            prop_assert_eq!(c.deleted.contains(&s), m.targets(s).is_empty());
        }
    }

    #[test]
    fn exchanges_are_splits(m in map()) {
        let c = classify_links(&m);
        for (a, b) in c.exchanges {
            prop_assert!(a < b);
            prop_assert!(c.splits.contains_key(&a) && c.splits.contains_key(&b));
        }
    }

    #[test]
    fn gold_scores_itself_perfectly(m in map()) {
        let r = score_alignment(&m, &m).unwrap();
        prop_assert_eq!(r.precision, 1.0);
        prop_assert_eq!(r.recall, 1.0);
        prop_assert_eq!(r.f1, 1.0);
    }

    #[test]
    fn permutations_are_recovered(perm in permutation(), noise in vec(0.0f64..0.15, 144)) {
        let n = perm.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if perm[i] == j { 0.9 } else { noise[i * 12 + j] }).collect())
            .collect();
        let matrix = SimilarityMatrix::from_rows(rows).unwrap();
        let predicted = predict_alignment(&matrix, 0.2).unwrap();
        let expected: BTreeSet<(usize, usize)> = perm.iter().enumerate().map(|(i, &j)| (i, j)).collect();
        prop_assert_eq!(predicted.links(), expected);
    }

    #[test]
    fn raising_the_threshold_only_removes_links(
        cells in vec(vec(0.0f64..1.0, 5), 4),
        t1 in 0.0f64..1.0,
        t2 in 0.0f64..1.0,
    ) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let matrix = SimilarityMatrix::from_rows(cells).unwrap();
        let loose = predict_alignment(&matrix, lo).unwrap().links();
        let strict = predict_alignment(&matrix, hi).unwrap().links();
        prop_assert!(strict.is_subset(&loose));
    }

    #[test]
    fn link_scores_are_bounded(a in map(), extra in vec((0usize..8, 0usize..8), 0..6)) {
        let links = a.links().into_iter().chain(
            extra.into_iter().filter(|&(s, t)| s < a.source_count() && t < a.target_count()),
        );
        let b = AlignmentMap::from_links(links, a.source_count(), a.target_count()).unwrap();
        let r = score_alignment(&b, &a).unwrap();
        if !a.links().is_empty() || b.links().is_empty() {
            prop_assert_eq!(r.recall, 1.0);
        }
        for v in [r.precision, r.recall, r.f1] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert!(r.f1 <= r.precision.max(r.recall) + 1e-12);
        prop_assert!(r.f1 + 1e-12 >= r.precision.min(r.recall));
    }
}
