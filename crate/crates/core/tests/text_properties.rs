use proptest::prelude::*;

use parasim::textproc::{segment_phrases, stem_german, tokenize_normalize, SegmentMode};
use parasim::PipelineConfig;

fn text() -> impl Strategy<Value = String> {
    "[A-Za-zÄÖÜäöüß0-9 ,.!?\n-]{0,80}"
}

proptest! {
    #[test]
    fn tokens_are_normalized(s in text()) {
        let config = PipelineConfig::default();
        for t in tokenize_normalize(&s, &config) {
            prop_assert!(!t.is_empty());
            prop_assert!(t.chars().all(char::is_alphanumeric));
            prop_assert_eq!(t.to_lowercase(), t.clone());
            prop_assert!(!config.stopwords().contains(&t));
        }
    }

    #[test]
    fn plain_pipeline_keeps_every_run(s in text()) {
        let runs = s.split(|c: char| !c.is_alphanumeric()).filter(|r| !r.is_empty()).count();
        prop_assert_eq!(tokenize_normalize(&s, &PipelineConfig::plain()).len(), runs);
    }

    #[test]
    fn stems_are_prefixes(w in "[a-zäöüß]{1,12}") {
        let s = stem_german(&w);
        prop_assert!(w.starts_with(&s));
        prop_assert!(s.chars().count() >= w.chars().count().min(3));
    }

    #[test]
    fn line_mode_keeps_nonblank_lines(s in text()) {
        let expected: Vec<String> = s.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_owned).collect();
        match segment_phrases("d", &s, SegmentMode::Line) {
            Ok(doc) => prop_assert_eq!(doc.phrases(), expected.as_slice()),
            Err(_) => prop_assert!(expected.is_empty()),
        }
    }

    #[test]
    fn sentence_mode_loses_no_words(s in text()) {
        let words: Vec<&str> = s.split_whitespace().collect();
        if let Ok(doc) = segment_phrases("d", &s, SegmentMode::Sentence) {
            let joined = doc.phrases().join(" ");
            prop_assert_eq!(joined.split_whitespace().collect::<Vec<_>>(), words);
        } else {
            prop_assert!(words.is_empty());
        }
    }
}
