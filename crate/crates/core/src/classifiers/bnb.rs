//! Binarized multinomial naive Bayes: each document contributes each of its
//! distinct terms once.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::vectorize::Vocabulary;
use crate::corpus::NfrSubcategory;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const BNB_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BnbModel<T> {
    pub version: u32,
    pub classes: Vec<NfrSubcategory>,
    pub smoothing: f64,
    pub log_priors: Vec<T>,
    /// `log_likelihoods[c][t]` = log P(term t present | class c).
    pub log_likelihoods: Vec<Vec<T>>,
    pub vocabulary: Vocabulary,
}

/// Distinct terms; applying it twice changes nothing.
pub fn binarize<S: AsRef<str>>(doc: &[S]) -> Vec<String> {
    doc.iter()
        .map(|t| t.as_ref().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

pub fn train_bnb<T: Scalar, S: AsRef<str>>(
    docs: &[Vec<S>],
    labels: &[NfrSubcategory],
    smoothing: f64,
) -> Result<BnbModel<T>> {
    if docs.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: docs.len(),
            actual: labels.len(),
        });
    }
    if docs.is_empty() {
        return Err(Error::Empty("no training documents for naive Bayes".into()));
    }
    if smoothing <= 0.0 {
        return Err(Error::InvalidArgument("smoothing must be positive".into()));
    }
    let binarized: Vec<Vec<String>> = docs.iter().map(|d| binarize(d)).collect();
    let vocabulary = Vocabulary::fit(&binarized);
    let classes: Vec<NfrSubcategory> = labels.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let v = vocabulary.len();
    let mut doc_counts = vec![0usize; classes.len()];
    let mut term_counts = vec![vec![0usize; v]; classes.len()];
    for (d, l) in binarized.iter().zip(labels) {
        let c = classes.binary_search(l).unwrap();
        doc_counts[c] += 1;
        for id in vocabulary.encode(d) {
            term_counts[c][id] += 1;
        }
    }
    let n = docs.len() as f64;
    let log_priors = doc_counts.iter().map(|&k| T::of((k as f64 / n).ln())).collect();
    let log_likelihoods = term_counts
        .iter()
        .map(|row| {
            let total: usize = row.iter().sum();
            let denom = total as f64 + smoothing * v as f64;
            row.iter()
                .map(|&k| T::of(((k as f64 + smoothing) / denom).ln()))
                .collect()
        })
        .collect();
    Ok(BnbModel {
        version: BNB_FORMAT_VERSION,
        classes,
        smoothing,
        log_priors,
        log_likelihoods,
        vocabulary,
    })
}

/// Most probable class and the normalized posterior over `model.classes`.
/// Out-of-vocabulary terms are ignored.
pub fn predict_bnb<T: Scalar, S: AsRef<str>>(model: &BnbModel<T>, doc: &[S]) -> (NfrSubcategory, Vec<T>) {
    let ids = model.vocabulary.encode(&binarize(doc));
    let scores: Vec<T> = model
        .log_priors
        .iter()
        .zip(&model.log_likelihoods)
        .map(|(&p, row)| ids.iter().fold(p, |acc, &t| acc + row[t]))
        .collect();
    let max = scores.iter().copied().fold(T::neg_infinity(), T::max);
    let mut post: Vec<T> = scores.iter().map(|&s| (s - max).exp()).collect();
    super::normalize(&mut post);
    (model.classes[super::argmax(&post)], post)
}

impl<T: Scalar> BnbModel<T> {
    pub fn predict<S: AsRef<str>>(&self, doc: &[S]) -> NfrSubcategory {
        predict_bnb(self, doc).0
    }
}

impl<T: Scalar + Serialize + for<'de> Deserialize<'de>> BnbModel<T> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let mut m: Self = serde_json::from_str(src)?;
        if m.version != BNB_FORMAT_VERSION {
            return Err(Error::Version {
                what: "naive Bayes model".into(),
                found: m.version,
                expected: BNB_FORMAT_VERSION,
            });
        }
        m.vocabulary.reindex();
        Ok(m)
    }
}
