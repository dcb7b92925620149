use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifiers::vectorize::{sq_dist, DocTermVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Silhouette<T> {
    pub values: Vec<T>,
    pub mean: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterDiagnostics<T> {
    pub hopkins: T,
    pub silhouette: Silhouette<T>,
}

fn nn_distance<T: Scalar>(p: &[T], vectors: &[DocTermVector<T>], skip: Option<usize>) -> T {
    vectors
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, v)| sq_dist(p, &v.weights))
        .fold(T::infinity(), T::min)
        .sqrt()
}

/// Hopkins statistic `Σw / (Σu + Σw)`: `w` are nearest-neighbour distances
/// of sampled data points to the other data points, `u` those of uniform
/// points in the bounding box to the data. Values near 0 mean clusterable
/// data, around 0.5 spatially random data.
pub fn hopkins<T: Scalar>(vectors: &[DocTermVector<T>], sample_fraction: f64, seed: u64) -> Result<T> {
    if vectors.len() < 10 {
        return Err(Error::InvalidArgument(format!(
            "Hopkins needs at least 10 points, got {}",
            vectors.len()
        )));
    }
    if !(sample_fraction > 0.0 && sample_fraction <= 0.5) {
        return Err(Error::InvalidArgument(format!(
            "sample fraction {sample_fraction} outside (0, 0.5]"
        )));
    }
    let dim = vectors[0].dimension();
    if let Some(v) = vectors.iter().find(|v| v.dimension() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: v.dimension(),
        });
    }
    let mut lo = vectors[0].weights.clone();
    let mut hi = vectors[0].weights.clone();
    for v in vectors {
        for (j, &x) in v.weights.iter().enumerate() {
            lo[j] = lo[j].min(x);
            hi[j] = hi[j].max(x);
        }
    }
    if lo.iter().zip(&hi).all(|(a, b)| a == b) {
        return Err(Error::InvalidArgument(
            "all points are identical; bounding box is degenerate".into(),
        ));
    }
    let n = vectors.len();
    let m = ((sample_fraction * n as f64).round() as usize).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = sample(&mut rng, n, m);
    let w: T = picks
        .iter()
        .map(|i| nn_distance(&vectors[i].weights, vectors, Some(i)))
        .sum();
    let mut u = T::zero();
    let mut p = vec![T::zero(); dim];
    for _ in 0..m {
        for j in 0..dim {
            p[j] = if lo[j] == hi[j] {
                lo[j]
            } else {
                lo[j] + (hi[j] - lo[j]) * T::of(rng.gen::<f64>())
            };
        }
        u = u + nn_distance(&p, vectors, None);
    }
    if u + w == T::zero() {
        return Err(Error::InvalidArgument(
            "all nearest-neighbour distances are zero".into(),
        ));
    }
    Ok(w / (u + w))
}

/// Mean of `hopkins` over seeds `seed, seed + 1, ..`.
pub fn hopkins_mean<T: Scalar>(
    vectors: &[DocTermVector<T>],
    sample_fraction: f64,
    seed: u64,
    n_seeds: usize,
) -> Result<T> {
    if n_seeds == 0 {
        return Err(Error::InvalidArgument("n_seeds must be positive".into()));
    }
    let mut s = T::zero();
    for i in 0..n_seeds as u64 {
        s = s + hopkins(vectors, sample_fraction, seed.wrapping_add(i))?;
    }
    Ok(s / T::of_usize(n_seeds))
}

/// Per-point silhouette under Euclidean distance. Points in singleton
/// clusters get 0.
pub fn silhouette<T: Scalar>(vectors: &[DocTermVector<T>], assignments: &[usize]) -> Result<Silhouette<T>> {
    if vectors.len() != assignments.len() {
        return Err(Error::DimensionMismatch {
            expected: vectors.len(),
            actual: assignments.len(),
        });
    }
    let k = assignments.iter().max().map_or(0, |&m| m + 1);
    let mut sizes = vec![0usize; k];
    for &c in assignments {
        sizes[c] += 1;
    }
    if sizes.iter().filter(|&&s| s > 0).count() < 2 {
        return Err(Error::InvalidArgument(
            "silhouette needs at least two non-empty clusters".into(),
        ));
    }
    let n = vectors.len();
    let mut values = Vec::with_capacity(n);
    let mut sums = vec![T::zero(); k];
    for i in 0..n {
        sums.iter_mut().for_each(|s| *s = T::zero());
        for j in 0..n {
            if i != j {
                sums[assignments[j]] = sums[assignments[j]] + sq_dist(&vectors[i].weights, &vectors[j].weights).sqrt();
            }
        }
        let own = assignments[i];
        if sizes[own] == 1 {
            values.push(T::zero());
            continue;
        }
        let a = sums[own] / T::of_usize(sizes[own] - 1);
        let b = (0..k)
            .filter(|&c| c != own && sizes[c] > 0)
            .map(|c| sums[c] / T::of_usize(sizes[c]))
            .fold(T::infinity(), T::min);
        let denom = a.max(b);
        values.push(if denom > T::zero() { (b - a) / denom } else { T::zero() });
    }
    let mean = values.iter().copied().sum::<T>() / T::of_usize(n);
    Ok(Silhouette { values, mean })
}
