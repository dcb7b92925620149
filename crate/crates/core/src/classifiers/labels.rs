//! Majority-label mapping from topic or cluster ids to sub-categories.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::NfrSubcategory;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelMap {
    pub mapping: BTreeMap<usize, NfrSubcategory>,
    /// Used for ids that no training document was assigned to.
    pub fallback: NfrSubcategory,
}

/// Most frequent label; ties go to the lexicographically smaller code.
fn majority(labels: impl Iterator<Item = NfrSubcategory>) -> Option<NfrSubcategory> {
    let mut counts: BTreeMap<&'static str, (usize, NfrSubcategory)> = BTreeMap::new();
    for l in labels {
        counts.entry(l.code()).or_insert((0, l)).0 += 1;
    }
    counts
        .values()
        .fold(None, |acc: Option<(usize, NfrSubcategory)>, &(n, l)| match acc {
            Some((m, _)) if m >= n => acc,
            _ => Some((n, l)),
        })
        .map(|(_, l)| l)
}

impl LabelMap {
    /// `ids[i]` is the topic or cluster of document `i`; ids range over `0..n_ids`.
    pub fn fit(ids: &[usize], labels: &[NfrSubcategory], n_ids: usize) -> Result<Self> {
        if ids.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: ids.len(),
                actual: labels.len(),
            });
        }
        let fallback = majority(labels.iter().copied()).ok_or_else(|| Error::Empty("no labeled documents".into()))?;
        let mapping = (0..n_ids)
            .map(|id| {
                let l = majority(ids.iter().zip(labels).filter(|(&i, _)| i == id).map(|(_, &l)| l));
                (id, l.unwrap_or(fallback))
            })
            .collect();
        Ok(LabelMap { mapping, fallback })
    }

    pub fn get(&self, id: usize) -> NfrSubcategory {
        self.mapping.get(&id).copied().unwrap_or(self.fallback)
    }

    pub fn apply(&self, ids: &[usize]) -> Vec<NfrSubcategory> {
        ids.iter().map(|&i| self.get(i)).collect()
    }
}

/// Map each topic to the majority label of documents whose dominant topic it is.
pub fn assign_topic_labels(dominant_topics: &[usize], labels: &[NfrSubcategory], k: usize) -> Result<LabelMap> {
    LabelMap::fit(dominant_topics, labels, k)
}

pub fn assign_cluster_labels(assignments: &[usize], labels: &[NfrSubcategory], k: usize) -> Result<LabelMap> {
    LabelMap::fit(assignments, labels, k)
}
