//! C4.5-style binary decision tree over numeric features for FR/NFR.

use serde::{Deserialize, Serialize};

use crate::corpus::ReqKind;
use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::scalar::Scalar;

pub const TREE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TreeParams {
    pub min_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams { min_leaf: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum Node<T> {
    Leaf {
        class: ReqKind,
        /// Training instances per class, `[FR, NFR]`.
        distribution: [usize; 2],
    },
    Split {
        feature: usize,
        /// `x[feature] <= threshold` goes left.
        threshold: T,
        gain_ratio: f64,
        left: Box<Node<T>>,
        right: Box<Node<T>>,
    },
}

impl<T> Node<T> {
    fn leaves(&self) -> usize {
        match self {
            Node::Leaf { .. } => 1,
            Node::Split { left, right, .. } => left.leaves() + right.leaves(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            Node::Leaf { .. } => 0,
            Node::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    fn visit_leaves(&self, f: &mut impl FnMut(ReqKind, [usize; 2])) {
        match self {
            Node::Leaf { class, distribution } => f(*class, *distribution),
            Node::Split { left, right, .. } => {
                left.visit_leaves(f);
                right.visit_leaves(f);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree<T> {
    pub version: u32,
    pub n_features: usize,
    pub min_leaf: usize,
    pub root: Node<T>,
}

fn class_index(k: ReqKind) -> usize {
    match k {
        ReqKind::Fr => 0,
        ReqKind::Nfr => 1,
    }
}

fn majority(dist: [usize; 2]) -> ReqKind {
    if dist[0] > dist[1] {
        ReqKind::Fr
    } else {
        ReqKind::Nfr
    }
}

pub(crate) fn entropy(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.log2()
        })
        .sum()
}

/// `(information gain, gain ratio)` of splitting `parent` into `left` and the rest.
pub(crate) fn gain_and_ratio(parent: [usize; 2], left: [usize; 2]) -> (f64, f64) {
    let right = [parent[0] - left[0], parent[1] - left[1]];
    let n = (parent[0] + parent[1]) as f64;
    let (nl, nr) = ((left[0] + left[1]) as f64, (right[0] + right[1]) as f64);
    let gain = entropy(&parent) - (nl / n) * entropy(&left) - (nr / n) * entropy(&right);
    let split_info = entropy(&[left[0] + left[1], right[0] + right[1]]);
    let ratio = if split_info > 0.0 { gain / split_info } else { 0.0 };
    (gain, ratio)
}

struct Candidate<T> {
    feature: usize,
    threshold: T,
    gain: f64,
    ratio: f64,
}

fn best_split<T: Scalar>(
    x: &[&[T]],
    y: &[usize],
    rows: &[usize],
    n_features: usize,
    min_leaf: usize,
) -> Option<Candidate<T>> {
    let mut parent = [0usize; 2];
    for &r in rows {
        parent[y[r]] += 1;
    }
    // best candidate per feature by gain ratio
    let mut per_feature: Vec<Candidate<T>> = Vec::new();
    for f in 0..n_features {
        let mut sorted: Vec<usize> = rows.to_vec();
        sorted.sort_by(|&a, &b| x[a][f].partial_cmp(&x[b][f]).unwrap().then(a.cmp(&b)));
        let mut left = [0usize; 2];
        let mut best: Option<Candidate<T>> = None;
        for i in 0..sorted.len() - 1 {
            left[y[sorted[i]]] += 1;
            let (lo, hi) = (x[sorted[i]][f], x[sorted[i + 1]][f]);
            if lo == hi || i + 1 < min_leaf || sorted.len() - (i + 1) < min_leaf {
                continue;
            }
            let (gain, ratio) = gain_and_ratio(parent, left);
            if gain <= 0.0 {
                continue;
            }
            if best.as_ref().is_none_or(|b| ratio > b.ratio) {
                best = Some(Candidate {
                    feature: f,
                    threshold: (lo + hi) / T::of(2.0),
                    gain,
                    ratio,
                });
            }
        }
        per_feature.extend(best);
    }
    if per_feature.is_empty() {
        return None;
    }
    // C4.5 only considers tests whose gain is at least the average gain
    let avg = per_feature.iter().map(|c| c.gain).sum::<f64>() / per_feature.len() as f64;
    per_feature
        .into_iter()
        .filter(|c| c.gain >= avg - 1e-12)
        .fold(None, |acc: Option<Candidate<T>>, c| match acc {
            Some(a) if a.ratio >= c.ratio => Some(a),
            _ => Some(c),
        })
        .filter(|c| c.ratio > 0.0)
}

fn grow<T: Scalar>(x: &[&[T]], y: &[usize], rows: &[usize], n_features: usize, min_leaf: usize) -> Node<T> {
    let mut dist = [0usize; 2];
    for &r in rows {
        dist[y[r]] += 1;
    }
    let leaf = Node::Leaf {
        class: majority(dist),
        distribution: dist,
    };
    if dist[0] == 0 || dist[1] == 0 || rows.len() < 2 * min_leaf {
        return leaf;
    }
    let Some(c) = best_split(x, y, rows, n_features, min_leaf) else {
        return leaf;
    };
    let (l, r): (Vec<usize>, Vec<usize>) = rows.iter().partition(|&&i| x[i][c.feature] <= c.threshold);
    Node::Split {
        feature: c.feature,
        threshold: c.threshold,
        gain_ratio: c.ratio,
        left: Box::new(grow(x, y, &l, n_features, min_leaf)),
        right: Box::new(grow(x, y, &r, n_features, min_leaf)),
    }
}

pub fn train_tree<T: Scalar>(
    vectors: &[FeatureVector<T>],
    labels: &[ReqKind],
    params: TreeParams,
) -> Result<DecisionTree<T>> {
    if vectors.is_empty() {
        return Err(Error::Empty("no training instances for the decision tree".into()));
    }
    if vectors.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: vectors.len(),
            actual: labels.len(),
        });
    }
    let n_features = vectors[0].len();
    if let Some(v) = vectors.iter().find(|v| v.len() != n_features) {
        return Err(Error::DimensionMismatch {
            expected: n_features,
            actual: v.len(),
        });
    }
    if params.min_leaf == 0 {
        return Err(Error::InvalidArgument("min_leaf must be positive".into()));
    }
    let x: Vec<&[T]> = vectors.iter().map(|v| v.values.as_slice()).collect();
    let y: Vec<usize> = labels.iter().map(|&k| class_index(k)).collect();
    let rows: Vec<usize> = (0..vectors.len()).collect();
    Ok(DecisionTree {
        version: TREE_FORMAT_VERSION,
        n_features,
        min_leaf: params.min_leaf,
        root: grow(&x, &y, &rows, n_features, params.min_leaf),
    })
}

/// Predicted class and the class distribution `[FR, NFR]` of the leaf reached.
pub fn predict_tree<T: Scalar>(tree: &DecisionTree<T>, vector: &FeatureVector<T>) -> Result<(ReqKind, [usize; 2])> {
    if vector.len() != tree.n_features {
        return Err(Error::DimensionMismatch {
            expected: tree.n_features,
            actual: vector.len(),
        });
    }
    let mut node = &tree.root;
    loop {
        match node {
            Node::Leaf { class, distribution } => return Ok((*class, *distribution)),
            Node::Split {
                feature,
                threshold,
                left,
                right,
                ..
            } => {
                node = if vector.values[*feature] <= *threshold {
                    left
                } else {
                    right
                };
            }
        }
    }
}

impl<T: Scalar> DecisionTree<T> {
    pub fn leaves(&self) -> usize {
        self.root.leaves()
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// Smallest number of training instances in any leaf.
    pub fn min_leaf_size(&self) -> usize {
        let mut m = usize::MAX;
        self.root.visit_leaves(&mut |_, d| m = m.min(d[0] + d[1]));
        m
    }
}

impl<T: Scalar + Serialize + for<'de> Deserialize<'de>> DecisionTree<T> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let t: Self = serde_json::from_str(src)?;
        if t.version != TREE_FORMAT_VERSION {
            return Err(Error::Version {
                what: "decision tree".into(),
                found: t.version,
                expected: TREE_FORMAT_VERSION,
            });
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fv(v: &[f64]) -> FeatureVector<f64> {
        FeatureVector { values: v.to_vec() }
    }

    #[test]
    fn separable_single_split() {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..12 {
            x.push(fv(&[i as f64, 0.0]));
            y.push(ReqKind::Fr);
            x.push(fv(&[100.0 + i as f64, 0.0]));
            y.push(ReqKind::Nfr);
        }
        let t = train_tree(&x, &y, TreeParams::default()).unwrap();
        assert_eq!(t.leaves(), 2);
        for (v, &c) in x.iter().zip(&y) {
            assert_eq!(predict_tree(&t, v).unwrap().0, c);
        }
        match &t.root {
            Node::Split { feature, threshold, .. } => assert_eq!((*feature, *threshold), (0, 55.5)),
            _ => panic!(),
        }
    }

    #[test]
    fn too_small_for_a_split() {
        let x: Vec<_> = (0..8).map(|i| fv(&[i as f64])).collect();
        let y: Vec<_> = (0..8).map(|i| if i < 4 { ReqKind::Fr } else { ReqKind::Nfr }).collect();
        let t = train_tree(&x, &y, TreeParams::default()).unwrap();
        assert!(matches!(
            t.root,
            Node::Leaf {
                distribution: [4, 4],
                class: ReqKind::Nfr
            }
        ));
    }

    #[test]
    fn hand_built_tree() {
        let t = DecisionTree {
            version: TREE_FORMAT_VERSION,
            n_features: 1,
            min_leaf: 1,
            root: Node::Split {
                feature: 0,
                threshold: 2.5,
                gain_ratio: 1.0,
                left: Box::new(Node::Leaf {
                    class: ReqKind::Fr,
                    distribution: [3, 0],
                }),
                right: Box::new(Node::Leaf {
                    class: ReqKind::Nfr,
                    distribution: [0, 3],
                }),
            },
        };
        assert_eq!(predict_tree(&t, &fv(&[3.0])).unwrap().0, ReqKind::Nfr);
        assert_eq!(predict_tree(&t, &fv(&[2.5])).unwrap().0, ReqKind::Fr);
        assert!(predict_tree(&t, &fv(&[1.0, 2.0])).is_err());
        let back = DecisionTree::from_json(&t.to_json().unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn gain_ratio_matches_entropy_definitions() {
        // parent 6 FR / 4 NFR split into (4 FR, 1 NFR) | (2 FR, 3 NFR)
        let h = |p: f64| {
            if p == 0.0 || p == 1.0 {
                0.0
            } else {
                -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
            }
        };
        let gain = h(0.6) - 0.5 * h(0.8) - 0.5 * h(0.4);
        let ratio = gain / h(0.5);
        let (g, r) = gain_and_ratio([6, 4], [4, 1]);
        assert!((g - gain).abs() < 1e-12 && (r - ratio).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(train_tree::<f64>(&[], &[], TreeParams::default()).is_err());
        assert!(train_tree(&[fv(&[1.0])], &[], TreeParams::default()).is_err());
    }

    proptest! {
        #[test]
        fn leaves_respect_min_leaf(points in prop::collection::vec((0u8..6, 0u8..6, any::<bool>()), 1..80), min_leaf in 1usize..8) {
            let x: Vec<_> = points.iter().map(|&(a, b, _)| fv(&[a as f64, b as f64])).collect();
            let y: Vec<_> = points.iter().map(|&(_, _, c)| if c { ReqKind::Nfr } else { ReqKind::Fr }).collect();
            let t = train_tree(&x, &y, TreeParams { min_leaf }).unwrap();
            if t.leaves() > 1 {
                prop_assert!(t.min_leaf_size() >= min_leaf);
            }
            let mut total = 0;
            t.root.visit_leaves(&mut |_, d| total += d[0] + d[1]);
            prop_assert_eq!(total, x.len());
            fn ratios(n: &Node<f64>, out: &mut Vec<f64>) {
                if let Node::Split { gain_ratio, left, right, .. } = n {
                    out.push(*gain_ratio);
                    ratios(left, out);
                    ratios(right, out);
                }
            }
            let mut rs = Vec::new();
            ratios(&t.root, &mut rs);
            prop_assert!(rs.iter().all(|&r| r > 0.0));
        }
    }
}
