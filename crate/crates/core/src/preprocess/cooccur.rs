use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{tokenize, STOP_WORDS};
use crate::corpus::Corpus;

/// Requirement-level co-occurrence counts. `co[a][b]` is the number of
/// requirements containing both `a` and `b` (`a != b`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CooccurrenceIndex {
    co: BTreeMap<String, BTreeMap<String, usize>>,
}

/// Lowercased word terms of a text; punctuation-only tokens are dropped.
pub(crate) fn terms(text: &str) -> BTreeSet<String> {
    tokenize(text)
        .unwrap_or_default()
        .into_iter()
        .filter(|t| t.chars().any(char::is_alphanumeric))
        .map(|t| t.to_lowercase())
        .collect()
}

impl CooccurrenceIndex {
    pub fn from_texts<'a>(texts: impl IntoIterator<Item = &'a str>) -> Self {
        let mut idx = CooccurrenceIndex::default();
        for text in texts {
            idx.add_window(&terms(text));
        }
        idx
    }

    fn add_window(&mut self, window: &BTreeSet<String>) {
        for a in window {
            let row = self.co.entry(a.clone()).or_default();
            for b in window {
                if a != b {
                    *row.entry(b.clone()).or_insert(0) += 1;
                }
            }
        }
    }

    /// Terms co-occurring with `term` (case-insensitive). Empty for unseen terms.
    pub fn co(&self, term: &str) -> BTreeSet<&str> {
        self.co
            .get(&term.to_lowercase())
            .map(|row| row.keys().map(String::as_str).collect())
            .unwrap_or_default()
    }

    pub fn count(&self, a: &str, b: &str) -> usize {
        self.co
            .get(&a.to_lowercase())
            .and_then(|row| row.get(&b.to_lowercase()))
            .copied()
            .unwrap_or(0)
    }

    /// Union of `CO(k)` over every indexed term that starts with a keyword,
    /// so `authorize` also covers `authorized` and `authorization`.
    pub fn co_of_keywords(&self, keywords: &[String]) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for k in keywords {
            let k = k.to_lowercase();
            for (term, row) in self.co.range(k.clone()..) {
                if !term.starts_with(&k) {
                    break;
                }
                out.extend(row.keys().map(String::as_str));
            }
        }
        out
    }

    /// `CO(ω) ∩ CO(keywords) ≠ ∅` with stop words removed. A multi-word ω
    /// contributes the union of its content words.
    pub fn guard_passes(&self, omega: &[String], keywords: &[String]) -> bool {
        let target = self.co_of_keywords(keywords);
        omega
            .iter()
            .filter(|w| !STOP_WORDS.contains(&w.to_lowercase().as_str()))
            .flat_map(|w| self.co(w))
            .any(|t| !STOP_WORDS.contains(&t) && target.contains(t))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.co.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.co.len()
    }

    pub fn is_empty(&self) -> bool {
        self.co.is_empty()
    }
}

/// Index over the whole corpus with one window per requirement.
pub fn build_cooccurrence(corpus: &Corpus) -> CooccurrenceIndex {
    CooccurrenceIndex::from_texts(corpus.iter().map(|r| r.text.as_str()))
}
