//! Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::vectorize::Vocabulary;
use super::{argmax, normalize, sample_index};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const LDA_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LdaParams {
    pub k: usize,
    /// Document-topic prior; `50 / k` when unset.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for LdaParams {
    fn default() -> Self {
        LdaParams {
            k: 10,
            alpha: None,
            beta: 0.01,
            iterations: 1000,
            seed: 42,
        }
    }
}

impl LdaParams {
    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(50.0 / self.k as f64)
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidArgument("topic count must be positive".into()));
        }
        if self.alpha() <= 0.0 || self.beta <= 0.0 {
            return Err(Error::InvalidArgument("alpha and beta must be positive".into()));
        }
        Ok(())
    }
}

/// Sampler state; exposed so callers can step sweep by sweep.
#[derive(Debug, Clone)]
pub struct LdaSampler<T> {
    pub docs: Vec<Vec<usize>>,
    pub z: Vec<Vec<usize>>,
    pub doc_topic: Vec<Vec<u32>>,
    pub topic_word: Vec<Vec<u32>>,
    pub topic_totals: Vec<u32>,
    k: usize,
    v: usize,
    alpha: T,
    beta: T,
    rng: ChaCha8Rng,
}

impl<T: Scalar> LdaSampler<T> {
    /// `docs` are term ids below `v`. Topics start uniformly at random.
    pub fn new(docs: Vec<Vec<usize>>, v: usize, params: &LdaParams) -> Result<Self> {
        params.validate()?;
        if v == 0 {
            return Err(Error::Empty("LDA vocabulary is empty".into()));
        }
        let k = params.k;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut s = LdaSampler {
            z: Vec::with_capacity(docs.len()),
            doc_topic: vec![vec![0; k]; docs.len()],
            topic_word: vec![vec![0; v]; k],
            topic_totals: vec![0; k],
            docs: Vec::new(),
            k,
            v,
            alpha: T::of(params.alpha()),
            beta: T::of(params.beta),
            rng: ChaCha8Rng::seed_from_u64(0),
        };
        for (d, doc) in docs.iter().enumerate() {
            let zs: Vec<usize> = doc.iter().map(|_| rng.gen_range(0..k)).collect();
            for (&w, &t) in doc.iter().zip(&zs) {
                s.doc_topic[d][t] += 1;
                s.topic_word[t][w] += 1;
                s.topic_totals[t] += 1;
            }
            s.z.push(zs);
        }
        s.docs = docs;
        s.rng = rng;
        Ok(s)
    }

    fn weights(&self, d: usize, w: usize) -> Vec<T> {
        let vb = T::of_usize(self.v) * self.beta;
        (0..self.k)
            .map(|t| {
                (T::of(self.doc_topic[d][t] as f64) + self.alpha) * (T::of(self.topic_word[t][w] as f64) + self.beta)
                    / (T::of(self.topic_totals[t] as f64) + vb)
            })
            .collect()
    }

    fn remove(&mut self, d: usize, i: usize) {
        let (w, t) = (self.docs[d][i], self.z[d][i]);
        self.doc_topic[d][t] -= 1;
        self.topic_word[t][w] -= 1;
        self.topic_totals[t] -= 1;
    }

    fn add(&mut self, d: usize, i: usize, t: usize) {
        let w = self.docs[d][i];
        self.z[d][i] = t;
        self.doc_topic[d][t] += 1;
        self.topic_word[t][w] += 1;
        self.topic_totals[t] += 1;
    }

    /// Full conditional of token `i` in document `d` given all other
    /// assignments, normalized.
    pub fn conditional(&mut self, d: usize, i: usize) -> Vec<T> {
        let t = self.z[d][i];
        self.remove(d, i);
        let mut p = self.weights(d, self.docs[d][i]);
        self.add(d, i, t);
        normalize(&mut p);
        p
    }

    pub fn sweep(&mut self) {
        for d in 0..self.docs.len() {
            for i in 0..self.docs[d].len() {
                self.remove(d, i);
                let p = self.weights(d, self.docs[d][i]);
                let t = sample_index(&p, &mut self.rng);
                self.add(d, i, t);
            }
        }
    }

    pub fn total_tokens(&self) -> usize {
        self.docs.iter().map(Vec::len).sum()
    }

    /// Sum of the topic-word count matrix.
    pub fn total_assignments(&self) -> usize {
        self.topic_word.iter().flatten().map(|&c| c as usize).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaModel<T> {
    pub version: u32,
    pub k: usize,
    pub alpha: T,
    pub beta: T,
    pub iterations: usize,
    pub seed: u64,
    pub vocabulary: Vocabulary,
    pub topic_word_counts: Vec<Vec<u32>>,
    pub doc_topic_counts: Vec<Vec<u32>>,
    pub assignments: Vec<Vec<usize>>,
}

pub fn train_lda<T: Scalar, S: AsRef<str>>(docs: &[Vec<S>], params: &LdaParams) -> Result<LdaModel<T>> {
    params.validate()?;
    let vocabulary = Vocabulary::fit(docs);
    let encoded: Vec<Vec<usize>> = docs.iter().map(|d| vocabulary.encode(d)).collect();
    let mut s = LdaSampler::<T>::new(encoded, vocabulary.len(), params)?;
    for _ in 0..params.iterations {
        s.sweep();
    }
    Ok(LdaModel {
        version: LDA_FORMAT_VERSION,
        k: params.k,
        alpha: s.alpha,
        beta: s.beta,
        iterations: params.iterations,
        seed: params.seed,
        vocabulary,
        topic_word_counts: s.topic_word,
        doc_topic_counts: s.doc_topic,
        assignments: s.z,
    })
}

impl<T: Scalar> LdaModel<T> {
    /// Smoothed word distribution of topic `t`.
    pub fn phi(&self, t: usize) -> Vec<T> {
        let row = &self.topic_word_counts[t];
        let total = T::of(row.iter().map(|&c| c as f64).sum());
        let denom = total + T::of_usize(row.len()) * self.beta;
        row.iter().map(|&c| (T::of(c as f64) + self.beta) / denom).collect()
    }

    /// Smoothed topic distribution of training document `d`.
    pub fn theta(&self, d: usize) -> Vec<T> {
        let mut p: Vec<T> = self.doc_topic_counts[d]
            .iter()
            .map(|&c| T::of(c as f64) + self.alpha)
            .collect();
        normalize(&mut p);
        p
    }

    pub fn dominant_topic(&self, d: usize) -> usize {
        argmax(&self.theta(d))
    }

    pub fn dominant_topics(&self) -> Vec<usize> {
        (0..self.doc_topic_counts.len())
            .map(|d| self.dominant_topic(d))
            .collect()
    }

    /// The `n` most probable words of topic `t`; ties break on term order.
    pub fn top_words(&self, t: usize, n: usize) -> Vec<&str> {
        let row = &self.topic_word_counts[t];
        let mut ids: Vec<usize> = (0..row.len()).collect();
        ids.sort_by(|&a, &b| row[b].cmp(&row[a]).then(a.cmp(&b)));
        ids.into_iter().take(n).map(|i| self.vocabulary.term(i)).collect()
    }

    /// Topic distribution of an unseen document, sampling its tokens against
    /// the fixed topic-word counts.
    pub fn infer<S: AsRef<str>>(&self, doc: &[S], iterations: usize, seed: u64) -> Vec<T> {
        let ids = self.vocabulary.encode(doc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phis: Vec<Vec<T>> = (0..self.k).map(|t| self.phi(t)).collect();
        let mut z: Vec<usize> = ids.iter().map(|_| rng.gen_range(0..self.k)).collect();
        let mut counts = vec![0u32; self.k];
        for &t in &z {
            counts[t] += 1;
        }
        for _ in 0..iterations {
            for (i, &w) in ids.iter().enumerate() {
                counts[z[i]] -= 1;
                let p: Vec<T> = (0..self.k)
                    .map(|t| (T::of(counts[t] as f64) + self.alpha) * phis[t][w])
                    .collect();
                z[i] = sample_index(&p, &mut rng);
                counts[z[i]] += 1;
            }
        }
        let mut p: Vec<T> = counts.iter().map(|&c| T::of(c as f64) + self.alpha).collect();
        normalize(&mut p);
        p
    }
}

impl<T: Scalar + Serialize + for<'de> Deserialize<'de>> LdaModel<T> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let mut m: Self = serde_json::from_str(src)?;
        if m.version != LDA_FORMAT_VERSION {
            return Err(Error::Version {
                what: "LDA model".into(),
                found: m.version,
                expected: LDA_FORMAT_VERSION,
            });
        }
        m.vocabulary.reindex();
        Ok(m)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Two groups of documents over disjoint vocabularies.
    pub(crate) fn disjoint_corpus() -> (Vec<Vec<String>>, Vec<usize>) {
        let a = ["apple", "banana", "cherry", "grape", "lemon", "mango"];
        let b = ["router", "switch", "packet", "socket", "cable", "server"];
        let mut docs = Vec::new();
        let mut group = Vec::new();
        for i in 0..20 {
            for (g, vocab) in [a, b].iter().enumerate() {
                let doc: Vec<String> = (0..6).map(|j| vocab[(i * 7 + j * 5) % 6].to_string()).collect();
                docs.push(doc);
                group.push(g);
            }
        }
        (docs, group)
    }

    pub(crate) fn purity(dominant: &[usize], group: &[usize], k: usize) -> f64 {
        let mut hits = 0;
        for t in 0..k {
            let mut c = [0usize; 2];
            for (d, &g) in dominant.iter().zip(group) {
                if *d == t {
                    c[g] += 1;
                }
            }
            hits += c[0].max(c[1]);
        }
        hits as f64 / dominant.len() as f64
    }

    fn params(k: usize) -> LdaParams {
        LdaParams {
            k,
            alpha: Some(0.1),
            beta: 0.01,
            iterations: 200,
            seed: 7,
        }
    }

    #[test]
    fn recovers_disjoint_topics() {
        let (docs, group) = disjoint_corpus();
        let m: LdaModel<f64> = train_lda(&docs, &params(2)).unwrap();
        assert!(purity(&m.dominant_topics(), &group, 2) >= 0.9);
        for t in 0..2 {
            let top = m.top_words(t, 6);
            let in_a = top
                .iter()
                .filter(|w| ["apple", "banana", "cherry", "grape", "lemon", "mango"].contains(w))
                .count();
            assert!(in_a == 0 || in_a == 6, "{top:?}");
        }
    }

    #[test]
    fn single_topic_is_degenerate() {
        let (docs, _) = disjoint_corpus();
        let m: LdaModel<f64> = train_lda(&docs, &params(1)).unwrap();
        assert!(m.assignments.iter().flatten().all(|&t| t == 0));
        assert_eq!(m.theta(0), vec![1.0]);
    }

    #[test]
    fn sweeps_conserve_counts_and_conditionals_normalize() {
        let (docs, _) = disjoint_corpus();
        let vocab = Vocabulary::fit(&docs);
        let enc: Vec<Vec<usize>> = docs.iter().map(|d| vocab.encode(d)).collect();
        let mut s = LdaSampler::<f64>::new(enc, vocab.len(), &params(3)).unwrap();
        let total = s.total_tokens();
        for _ in 0..10 {
            s.sweep();
            assert_eq!(s.total_assignments(), total);
            assert_eq!(s.topic_totals.iter().map(|&c| c as usize).sum::<usize>(), total);
            let p = s.conditional(3, 2);
            assert!(p.iter().all(|&x| x >= 0.0));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn deterministic_per_seed_and_roundtrip() {
        let (docs, _) = disjoint_corpus();
        let a: LdaModel<f64> = train_lda(&docs, &params(2)).unwrap();
        let b: LdaModel<f64> = train_lda(&docs, &params(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(LdaModel::<f64>::from_json(&a.to_json().unwrap()).unwrap(), a);
        let theta = a.infer(&docs[0], 50, 1);
        assert!((theta.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(argmax(&theta), a.dominant_topic(0));
    }

    #[test]
    fn empty_vocabulary_errors() {
        let docs: Vec<Vec<String>> = vec![vec![], vec![]];
        assert!(train_lda::<f64, String>(&docs, &params(2)).is_err());
    }
}
