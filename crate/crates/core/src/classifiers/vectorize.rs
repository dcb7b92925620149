//! Bag-of-words term vectors over a fitted vocabulary.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::{tokenize, STOP_WORDS};
use crate::scalar::Scalar;

/// Lowercased, stop-word-filtered word terms of a text, in order.
pub fn doc_terms(text: &str) -> Vec<String> {
    tokenize(text)
        .unwrap_or_default()
        .into_iter()
        .filter(|t| t.chars().any(char::is_alphabetic))
        .map(|t| t.to_lowercase())
        .filter(|t| !STOP_WORDS.contains(&t.as_str()))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    terms: Vec<String>,
    #[serde(skip)]
    index: BTreeMap<String, usize>,
}

impl Vocabulary {
    /// Terms sorted lexicographically.
    pub fn fit<S: AsRef<str>>(docs: &[Vec<S>]) -> Self {
        let mut terms: Vec<String> = docs.iter().flatten().map(|t| t.as_ref().to_string()).collect();
        terms.sort();
        terms.dedup();
        Self::from_terms(terms)
    }

    pub fn from_terms(terms: Vec<String>) -> Self {
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Vocabulary { terms, index }
    }

    /// Rebuild the lookup table after deserialization.
    pub(crate) fn reindex(&mut self) {
        self.index = self.terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    }

    pub fn id(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, id: usize) -> &str {
        &self.terms[id]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ids of in-vocabulary terms; unknown terms are dropped.
    pub fn encode<S: AsRef<str>>(&self, doc: &[S]) -> Vec<usize> {
        doc.iter().filter_map(|t| self.id(t.as_ref())).collect()
    }
}

/// Dense weights over a vocabulary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocTermVector<T> {
    pub weights: Vec<T>,
}

impl<T: Scalar> DocTermVector<T> {
    pub fn new(weights: Vec<T>) -> Self {
        DocTermVector { weights }
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    /// Non-zero coordinates as `(term id, weight)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.weights
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, w)| *w != T::zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    #[default]
    Counts,
    Tfidf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vectorizer {
    pub vocabulary: Vocabulary,
    pub weighting: Weighting,
    idf: Vec<f64>,
}

impl Vectorizer {
    pub fn fit<S: AsRef<str>>(docs: &[Vec<S>], weighting: Weighting) -> Self {
        let vocabulary = Vocabulary::fit(docs);
        let mut df = vec![0usize; vocabulary.len()];
        for d in docs {
            let mut ids = vocabulary.encode(d);
            ids.sort_unstable();
            ids.dedup();
            for id in ids {
                df[id] += 1;
            }
        }
        let n = docs.len() as f64;
        let idf = df.iter().map(|&f| ((1.0 + n) / (1.0 + f as f64)).ln() + 1.0).collect();
        Vectorizer {
            vocabulary,
            weighting,
            idf,
        }
    }

    pub fn transform<T: Scalar, S: AsRef<str>>(&self, doc: &[S]) -> DocTermVector<T> {
        let mut w = vec![T::zero(); self.vocabulary.len()];
        for id in self.vocabulary.encode(doc) {
            w[id] = w[id] + T::one();
        }
        if self.weighting == Weighting::Tfidf {
            for (x, idf) in w.iter_mut().zip(&self.idf) {
                *x = *x * T::of(*idf);
            }
        }
        DocTermVector::new(w)
    }

    pub fn transform_all<T: Scalar, S: AsRef<str>>(&self, docs: &[Vec<S>]) -> Vec<DocTermVector<T>> {
        docs.iter().map(|d| self.transform(d)).collect()
    }
}

pub(crate) fn sq_dist<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum()
}

/// Euclidean distance between two vectors over the same vocabulary.
pub fn doc_distance<T: Scalar>(a: &DocTermVector<T>, b: &DocTermVector<T>) -> Result<T> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            actual: b.dimension(),
        });
    }
    Ok(sq_dist(&a.weights, &b.weights).sqrt())
}
