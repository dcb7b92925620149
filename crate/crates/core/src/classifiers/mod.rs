//! FR/NFR decision tree and the NFR sub-classification methods: binarized
//! naive Bayes, LDA, BTM and three clustering variants.

pub mod bnb;
pub mod btm;
pub mod cluster;
pub mod labels;
pub mod lda;
pub mod tree;
pub mod vectorize;

pub use bnb::{predict_bnb, train_bnb, BnbModel};
pub use btm::{extract_biterms, train_btm, BtmModel, BtmParams, BtmSampler};
pub use cluster::{
    cluster_hierarchical, cluster_hybrid, cluster_kmeans, kmeans_from, ClusterMethod, ClusterModel, Linkage, Merge,
};
pub use labels::{assign_cluster_labels, assign_topic_labels, LabelMap};
pub use lda::{train_lda, LdaModel, LdaParams, LdaSampler};
pub use tree::{predict_tree, train_tree, DecisionTree, Node, TreeParams};
pub use vectorize::{doc_distance, doc_terms, DocTermVector, Vectorizer, Vocabulary, Weighting};

use rand::Rng;

use crate::scalar::Scalar;

/// Draw an index from unnormalized non-negative weights.
pub(crate) fn sample_index<T: Scalar, R: Rng>(weights: &[T], rng: &mut R) -> usize {
    let total: T = weights.iter().copied().sum();
    let mut u = T::of(rng.gen::<f64>()) * total;
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return i;
        }
        u = u - w;
    }
    weights
        .iter()
        .rposition(|&w| w > T::zero())
        .unwrap_or(weights.len() - 1)
}

/// Normalize weights in place; returns false when they sum to zero.
pub(crate) fn normalize<T: Scalar>(weights: &mut [T]) -> bool {
    let total: T = weights.iter().copied().sum();
    if total <= T::zero() {
        return false;
    }
    for w in weights.iter_mut() {
        *w = *w / total;
    }
    true
}

pub(crate) fn argmax<T: Scalar>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}
