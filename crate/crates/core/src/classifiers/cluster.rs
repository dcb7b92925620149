//! Agglomerative, k-means and hybrid clustering under Euclidean distance.
//! Cluster ids are `0..k`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::vectorize::{sq_dist, DocTermVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const CLUSTER_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusterMethod {
    Hierarchical,
    KMeans,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    #[default]
    Average,
}

/// One agglomeration step: clusters `a` and `b` (numbered as in SciPy
/// linkage matrices: points first, then merges) joined at `distance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Merge<T> {
    pub a: usize,
    pub b: usize,
    pub distance: T,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterModel<T> {
    pub version: u32,
    pub method: ClusterMethod,
    pub k: usize,
    pub assignments: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centroids: Option<Vec<Vec<T>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub merges: Option<Vec<Merge<T>>>,
    /// Within-cluster sum of squares after each k-means iteration.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objective_trace: Vec<T>,
}

fn check_k<T: Scalar>(vectors: &[DocTermVector<T>], k: usize) -> Result<usize> {
    if k < 1 || k > vectors.len() {
        return Err(Error::InvalidArgument(format!(
            "cluster count {k} must be in 1..={}",
            vectors.len()
        )));
    }
    let dim = vectors[0].dimension();
    if let Some(v) = vectors.iter().find(|v| v.dimension() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: v.dimension(),
        });
    }
    Ok(dim)
}

/// Relabel so clusters are numbered by first appearance.
fn canonical(assign: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    assign
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// Within-cluster sum of squared distances.
pub fn objective<T: Scalar>(vectors: &[DocTermVector<T>], assign: &[usize], centroids: &[Vec<T>]) -> T {
    vectors
        .iter()
        .zip(assign)
        .map(|(v, &c)| sq_dist(&v.weights, &centroids[c]))
        .sum()
}

pub fn means<T: Scalar>(vectors: &[DocTermVector<T>], assign: &[usize], k: usize) -> Vec<Vec<T>> {
    let dim = vectors[0].dimension();
    let mut sums = vec![vec![T::zero(); dim]; k];
    let mut counts = vec![0usize; k];
    for (v, &c) in vectors.iter().zip(assign) {
        counts[c] += 1;
        for (s, &x) in sums[c].iter_mut().zip(&v.weights) {
            *s = *s + x;
        }
    }
    for (s, &n) in sums.iter_mut().zip(&counts) {
        if n > 0 {
            let n = T::of_usize(n);
            for x in s.iter_mut() {
                *x = *x / n;
            }
        }
    }
    sums
}

/// Agglomerative clustering with Lance-Williams updates, cut at `k` clusters.
pub fn cluster_hierarchical<T: Scalar>(
    vectors: &[DocTermVector<T>],
    k: usize,
    linkage: Linkage,
) -> Result<ClusterModel<T>> {
    check_k(vectors, k)?;
    let n = vectors.len();
    let mut d = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = sq_dist(&vectors[i].weights, &vectors[j].weights).sqrt();
            d[i][j] = x;
            d[j][i] = x;
        }
    }
    let mut active: Vec<bool> = vec![true; n];
    let mut size = vec![1usize; n];
    let mut label: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    let mut assign = vec![0usize; n];
    for step in 0..n - 1 {
        let mut best: Option<(usize, usize, T)> = None;
        for i in 0..n {
            if !active[i] {
                continue;
            }
            for j in i + 1..n {
                if active[j] && best.is_none_or(|(_, _, b)| d[i][j] < b) {
                    best = Some((i, j, d[i][j]));
                }
            }
        }
        let (i, j, dist) = best.unwrap();
        merges.push(Merge {
            a: label[i].min(label[j]),
            b: label[i].max(label[j]),
            distance: dist,
            size: size[i] + size[j],
        });
        for m in 0..n {
            if !active[m] || m == i || m == j {
                continue;
            }
            let x = match linkage {
                Linkage::Single => d[i][m].min(d[j][m]),
                Linkage::Complete => d[i][m].max(d[j][m]),
                Linkage::Average => {
                    let (si, sj) = (T::of_usize(size[i]), T::of_usize(size[j]));
                    (si * d[i][m] + sj * d[j][m]) / (si + sj)
                }
            };
            d[i][m] = x;
            d[m][i] = x;
        }
        active[j] = false;
        size[i] += size[j];
        label[i] = n + step;
        let moved = std::mem::take(&mut members[j]);
        members[i].extend(moved);
        if step + 1 == n - k {
            record(&members, &active, &mut assign);
        }
    }
    if k == n {
        assign = (0..n).collect();
    }
    Ok(ClusterModel {
        version: CLUSTER_FORMAT_VERSION,
        method: ClusterMethod::Hierarchical,
        k,
        assignments: canonical(&assign),
        centroids: None,
        merges: Some(merges),
        objective_trace: Vec::new(),
    })
}

fn record(members: &[Vec<usize>], active: &[bool], assign: &mut [usize]) {
    for (c, (m, _)) in members.iter().zip(active).filter(|(_, &a)| a).enumerate() {
        for &p in m {
            assign[p] = c;
        }
    }
}

fn nearest<T: Scalar>(v: &[T], centroids: &[Vec<T>]) -> (usize, T) {
    let mut best = (0, sq_dist(v, &centroids[0]));
    for (c, cent) in centroids.iter().enumerate().skip(1) {
        let d = sq_dist(v, cent);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// Lloyd iterations from the given centroids. An emptied cluster takes the
/// point farthest from its centroid among clusters with at least two members.
pub fn kmeans_from<T: Scalar>(
    vectors: &[DocTermVector<T>],
    mut centroids: Vec<Vec<T>>,
    max_iters: usize,
    method: ClusterMethod,
) -> Result<ClusterModel<T>> {
    let k = centroids.len();
    check_k(vectors, k)?;
    let mut assign: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    for _ in 0..max_iters.max(1) {
        let mut next = Vec::with_capacity(vectors.len());
        let mut dist = Vec::with_capacity(vectors.len());
        for v in vectors {
            let (c, d) = nearest(&v.weights, &centroids);
            next.push(c);
            dist.push(d);
        }
        loop {
            let mut counts = vec![0usize; k];
            for &c in &next {
                counts[c] += 1;
            }
            let Some(empty) = counts.iter().position(|&c| c == 0) else {
                break;
            };
            let far = (0..vectors.len())
                .filter(|&p| counts[next[p]] > 1)
                .fold(None, |acc: Option<usize>, p| match acc {
                    Some(q) if dist[q] >= dist[p] => Some(q),
                    _ => Some(p),
                })
                .expect("k <= n leaves a cluster with two members");
            next[far] = empty;
            dist[far] = T::zero();
        }
        let stable = next == assign;
        assign = next;
        centroids = means(vectors, &assign, k);
        trace.push(objective(vectors, &assign, &centroids));
        if stable {
            break;
        }
    }
    Ok(ClusterModel {
        version: CLUSTER_FORMAT_VERSION,
        method,
        k,
        assignments: assign,
        centroids: Some(centroids),
        merges: None,
        objective_trace: trace,
    })
}

/// k-means with centroids initialized at `k` distinct random data points.
pub fn cluster_kmeans<T: Scalar>(
    vectors: &[DocTermVector<T>],
    k: usize,
    seed: u64,
    max_iters: usize,
) -> Result<ClusterModel<T>> {
    check_k(vectors, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, vectors.len(), k).into_vec();
    picks.sort_unstable();
    let centroids = picks.iter().map(|&i| vectors[i].weights.clone()).collect();
    kmeans_from(vectors, centroids, max_iters, ClusterMethod::KMeans)
}

/// Hierarchical cut at `k`, then k-means started from the cut's cluster means.
pub fn cluster_hybrid<T: Scalar>(
    vectors: &[DocTermVector<T>],
    k: usize,
    linkage: Linkage,
    max_iters: usize,
) -> Result<ClusterModel<T>> {
    let h = cluster_hierarchical(vectors, k, linkage)?;
    let mut m = kmeans_from(
        vectors,
        means(vectors, &h.assignments, k),
        max_iters,
        ClusterMethod::Hybrid,
    )?;
    let start = objective(vectors, &h.assignments, &means(vectors, &h.assignments, k));
    m.objective_trace.insert(0, start);
    Ok(m)
}

impl<T: Scalar> ClusterModel<T> {
    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.k];
        for &c in &self.assignments {
            s[c] += 1;
        }
        s
    }
}

impl<T: Scalar + Serialize + for<'de> Deserialize<'de>> ClusterModel<T> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let m: Self = serde_json::from_str(src)?;
        if m.version != CLUSTER_FORMAT_VERSION {
            return Err(Error::Version {
                what: "cluster model".into(),
                found: m.version,
                expected: CLUSTER_FORMAT_VERSION,
            });
        }
        Ok(m)
    }
}
