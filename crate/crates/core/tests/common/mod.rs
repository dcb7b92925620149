#![allow(dead_code)]

use std::path::{Path, PathBuf};

use reqclass::corpus::{read_corpus_file, Corpus};

pub fn sample_corpus_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/sample_corpus.csv")
}

pub fn sample_corpus() -> Corpus {
    read_corpus_file(&sample_corpus_path(), None).expect("bundled sample corpus")
}

/// The PROMISE NFR file: `$REQCLASS_PROMISE`, else `data/promise_nfr.{arff,csv}`
/// at the workspace root.
pub fn promise_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("REQCLASS_PROMISE") {
        return Some(PathBuf::from(p));
    }
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    ["promise_nfr.arff", "promise_nfr.csv"]
        .iter()
        .map(|f| data.join(f))
        .find(|p| p.exists())
}

pub fn promise_corpus() -> Result<Corpus, String> {
    let path =
        promise_path().ok_or("PROMISE NFR dataset not found (set REQCLASS_PROMISE or add data/promise_nfr.arff)")?;
    read_corpus_file(&path, None).map_err(|e| e.to_string())
}
