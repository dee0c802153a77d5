//! Corpus directory layout:
//!
//! ```text
//! <root>/source.txt
//! <root>/basic/<nn>.txt
//! <root>/complex/<nn>.txt
//! <root>/control/cited/<nn>.txt        (optional)
//! <root>/control/unrelated/<nn>.txt
//! <root>/maps/<subcorpus>-<nn>.map     (optional gold alignments)
//! ```
//!
//! All documents are read one phrase per line.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::alignment::{parse_alignment, AlignmentMap};
use crate::textproc::{segment_phrases, PhraseDocument, SegmentMode};

use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subcorpus {
    Basic,
    Complex,
    Cited,
    Unrelated,
}

impl Subcorpus {
    pub const ALL: [Subcorpus; 4] = [
        Subcorpus::Basic,
        Subcorpus::Complex,
        Subcorpus::Cited,
        Subcorpus::Unrelated,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Subcorpus::Basic => "basic",
            Subcorpus::Complex => "complex",
            Subcorpus::Cited => "cited",
            Subcorpus::Unrelated => "unrelated",
        }
    }

    pub fn relative_dir(self) -> &'static str {
        match self {
            Subcorpus::Basic => "basic",
            Subcorpus::Complex => "complex",
            Subcorpus::Cited => "control/cited",
            Subcorpus::Unrelated => "control/unrelated",
        }
    }

    pub fn required(self) -> bool {
        !matches!(self, Subcorpus::Cited)
    }

    pub fn from_label(s: &str) -> Option<Subcorpus> {
        Subcorpus::ALL.into_iter().find(|c| c.label() == s)
    }
}

impl fmt::Display for Subcorpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusDocument {
    pub subcorpus: Subcorpus,
    /// File stem, e.g. `03` for `basic/03.txt`.
    pub name: String,
    pub document: PhraseDocument,
    pub gold: Option<AlignmentMap>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub root: PathBuf,
    pub source: PhraseDocument,
    /// Grouped by sub-corpus (in [`Subcorpus::ALL`] order), then by file name.
    pub documents: Vec<CorpusDocument>,
}

impl Corpus {
    pub fn documents_in(&self, subcorpus: Subcorpus) -> impl Iterator<Item = &CorpusDocument> {
        self.documents.iter().filter(move |d| d.subcorpus == subcorpus)
    }

    pub fn has(&self, subcorpus: Subcorpus) -> bool {
        self.documents_in(subcorpus).next().is_some()
    }
}

pub fn read_document(path: &Path) -> Result<PhraseDocument, EvalError> {
    let text = fs::read_to_string(path).map_err(|e| EvalError::io(path, e))?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(segment_phrases(id, &text, SegmentMode::Line)?)
}

pub fn load_corpus(root: &Path) -> Result<Corpus, EvalError> {
    let source_path = root.join("source.txt");
    if !source_path.is_file() {
        return Err(EvalError::MissingSource(source_path));
    }
    let source = read_document(&source_path)?;

    let mut documents = Vec::new();
    for sub in Subcorpus::ALL {
        let dir = root.join(sub.relative_dir());
        let files = if dir.is_dir() {
            text_files(&dir)?
        } else {
            Vec::new()
        };
        if files.is_empty() && (sub.required() || dir.is_dir()) {
            return Err(EvalError::EmptySubcorpus(sub.relative_dir().to_owned()));
        }
        for path in files {
            let document = read_document(&path)?;
            documents.push(CorpusDocument {
                subcorpus: sub,
                name: document.id().to_owned(),
                document,
                gold: None,
            });
        }
    }

    let maps_dir = root.join("maps");
    if maps_dir.is_dir() {
        for path in files_with_extension(&maps_dir, "map")? {
            attach_map(&path, &source, &mut documents)?;
        }
    }
    Ok(Corpus {
        root: root.to_path_buf(),
        source,
        documents,
    })
}

fn attach_map(path: &Path, source: &PhraseDocument, documents: &mut [CorpusDocument]) -> Result<(), EvalError> {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let target = stem
        .split_once('-')
        .and_then(|(label, name)| Some((Subcorpus::from_label(label)?, name)))
        .and_then(|(sub, name)| {
            documents
                .iter_mut()
                .find(|d| d.subcorpus == sub && d.name == name)
        })
        .ok_or_else(|| EvalError::DanglingMap(path.to_path_buf()))?;
    let text = fs::read_to_string(path).map_err(|e| EvalError::io(path, e))?;
    let map = parse_alignment(&text, source.len(), target.document.len()).map_err(|e| EvalError::Map {
        path: path.to_path_buf(),
        error: e,
    })?;
    target.gold = Some(map);
    Ok(())
}

fn text_files(dir: &Path) -> Result<Vec<PathBuf>, EvalError> {
    files_with_extension(dir, "txt")
}

fn files_with_extension(dir: &Path, ext: &str) -> Result<Vec<PathBuf>, EvalError> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| EvalError::io(dir, e))? {
        let path = entry.map_err(|e| EvalError::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == ext) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(root: &Path, rel: &str, text: &str) {
        let path = root.join(rel);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, text).unwrap();
    }

    fn minimal(root: &Path) {
        write(root, "source.txt", "Eins.\nZwei.\n");
        write(root, "basic/01.txt", "Eins!\nZwei!\n");
        write(root, "complex/01.txt", "Zwei und eins.\n");
        write(root, "control/unrelated/01.txt", "Etwas anderes.\n");
    }

    #[test]
    fn loads_minimal_corpus() {
        let dir = tempfile::tempdir().unwrap();
        minimal(dir.path());
        write(dir.path(), "maps/basic-01.map", "0: 0\n1: 1\n");
        let corpus = load_corpus(dir.path()).unwrap();
        assert_eq!(corpus.source.len(), 2);
        assert_eq!(corpus.documents.len(), 3);
        assert!(!corpus.has(Subcorpus::Cited));
        let basic = corpus.documents_in(Subcorpus::Basic).next().unwrap();
        assert_eq!(basic.gold.as_ref().unwrap().targets(1), [1]);
    }

    #[test]
    fn missing_source() {
        let dir = tempfile::tempdir().unwrap();
        minimal(dir.path());
        fs::remove_file(dir.path().join("source.txt")).unwrap();
        assert!(matches!(load_corpus(dir.path()), Err(EvalError::MissingSource(_))));
    }

    #[test]
    fn empty_subcorpus() {
        let dir = tempfile::tempdir().unwrap();
        minimal(dir.path());
        fs::remove_file(dir.path().join("complex/01.txt")).unwrap();
        assert!(matches!(
            load_corpus(dir.path()),
            Err(EvalError::EmptySubcorpus(s)) if s == "complex"
        ));
        // an existing but empty optional directory is also rejected
        let dir = tempfile::tempdir().unwrap();
        minimal(dir.path());
        fs::create_dir_all(dir.path().join("control/cited")).unwrap();
        assert!(matches!(load_corpus(dir.path()), Err(EvalError::EmptySubcorpus(_))));
    }

    #[test]
    fn dangling_map() {
        let dir = tempfile::tempdir().unwrap();
        minimal(dir.path());
        write(dir.path(), "maps/basic-02.map", "0: 0\n1: 1\n");
        assert!(matches!(load_corpus(dir.path()), Err(EvalError::DanglingMap(_))));
        let dir = tempfile::tempdir().unwrap();
        minimal(dir.path());
        write(dir.path(), "maps/nothing-01.map", "0: 0\n1: 1\n");
        assert!(matches!(load_corpus(dir.path()), Err(EvalError::DanglingMap(_))));
    }

    #[test]
    fn invalid_map_reports_file() {
        let dir = tempfile::tempdir().unwrap();
        minimal(dir.path());
        write(dir.path(), "maps/complex-01.map", "0: 0\n1: 3\n");
        assert!(matches!(load_corpus(dir.path()), Err(EvalError::Map { .. })));
    }
}
