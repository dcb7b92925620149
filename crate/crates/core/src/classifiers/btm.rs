//! Biterm topic model fitted by collapsed Gibbs sampling over corpus-wide
//! word pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::vectorize::Vocabulary;
use super::{argmax, normalize, sample_index};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const BTM_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BtmParams {
    pub k: usize,
    /// Topic prior; `50 / k` when unset.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
    /// Maximum distance between the two positions of a biterm; `None` uses
    /// the whole document.
    pub window: Option<usize>,
}

impl Default for BtmParams {
    fn default() -> Self {
        BtmParams {
            k: 10,
            alpha: None,
            beta: 0.01,
            iterations: 1000,
            seed: 42,
            window: None,
        }
    }
}

impl BtmParams {
    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(50.0 / self.k as f64)
    }
}

/// Unordered pairs of distinct terms at positions `i < j` with
/// `j - i <= window`. Pairs are stored with the smaller id first.
pub fn extract_biterms(doc: &[usize], window: Option<usize>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..doc.len() {
        let end = window.map_or(doc.len(), |w| (i + w + 1).min(doc.len()));
        for j in i + 1..end {
            let (a, b) = (doc[i], doc[j]);
            if a != b {
                out.push((a.min(b), a.max(b)));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct BtmSampler<T> {
    pub biterms: Vec<(usize, usize)>,
    pub z: Vec<usize>,
    /// Biterms per topic.
    pub topic_biterms: Vec<u32>,
    /// Word occurrences per topic; each biterm adds one to both its words.
    pub topic_word: Vec<Vec<u32>>,
    k: usize,
    v: usize,
    alpha: T,
    beta: T,
    rng: ChaCha8Rng,
}

impl<T: Scalar> BtmSampler<T> {
    pub fn new(biterms: Vec<(usize, usize)>, v: usize, params: &BtmParams) -> Result<Self> {
        if params.k == 0 {
            return Err(Error::InvalidArgument("topic count must be positive".into()));
        }
        if params.alpha() <= 0.0 || params.beta <= 0.0 {
            return Err(Error::InvalidArgument("alpha and beta must be positive".into()));
        }
        if biterms.is_empty() {
            return Err(Error::Empty(
                "no biterms: every document has fewer than two distinct terms".into(),
            ));
        }
        let k = params.k;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let z: Vec<usize> = biterms.iter().map(|_| rng.gen_range(0..k)).collect();
        let mut s = BtmSampler {
            topic_biterms: vec![0; k],
            topic_word: vec![vec![0; v]; k],
            biterms,
            z,
            k,
            v,
            alpha: T::of(params.alpha()),
            beta: T::of(params.beta),
            rng,
        };
        for b in 0..s.biterms.len() {
            let t = s.z[b];
            s.add(b, t);
        }
        Ok(s)
    }

    fn add(&mut self, b: usize, t: usize) {
        let (w1, w2) = self.biterms[b];
        self.z[b] = t;
        self.topic_biterms[t] += 1;
        self.topic_word[t][w1] += 1;
        self.topic_word[t][w2] += 1;
    }

    fn remove(&mut self, b: usize) {
        let (w1, w2) = self.biterms[b];
        let t = self.z[b];
        self.topic_biterms[t] -= 1;
        self.topic_word[t][w1] -= 1;
        self.topic_word[t][w2] -= 1;
    }

    fn weights(&self, b: usize) -> Vec<T> {
        let (w1, w2) = self.biterms[b];
        let vb = T::of_usize(self.v) * self.beta;
        (0..self.k)
            .map(|t| {
                let nk = T::of(self.topic_biterms[t] as f64);
                let denom = T::of(2.0) * nk + vb;
                (nk + self.alpha)
                    * (T::of(self.topic_word[t][w1] as f64) + self.beta)
                    * (T::of(self.topic_word[t][w2] as f64) + self.beta)
                    / (denom * (denom + T::one()))
            })
            .collect()
    }

    pub fn conditional(&mut self, b: usize) -> Vec<T> {
        let t = self.z[b];
        self.remove(b);
        let mut p = self.weights(b);
        self.add(b, t);
        normalize(&mut p);
        p
    }

    pub fn sweep(&mut self) {
        for b in 0..self.biterms.len() {
            self.remove(b);
            let p = self.weights(b);
            let t = sample_index(&p, &mut self.rng);
            self.add(b, t);
        }
    }

    pub fn total_assignments(&self) -> usize {
        self.topic_biterms.iter().map(|&c| c as usize).sum()
    }

    pub fn total_word_assignments(&self) -> usize {
        self.topic_word.iter().flatten().map(|&c| c as usize).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BtmModel<T> {
    pub version: u32,
    pub k: usize,
    pub alpha: T,
    pub beta: T,
    pub iterations: usize,
    pub seed: u64,
    pub window: Option<usize>,
    pub vocabulary: Vocabulary,
    pub topic_biterm_counts: Vec<u32>,
    pub topic_word_counts: Vec<Vec<u32>>,
    pub biterms: Vec<(usize, usize)>,
    pub biterm_topics: Vec<usize>,
    /// Inferred topic distribution of every training document.
    pub doc_topics: Vec<Vec<T>>,
}

pub fn train_btm<T: Scalar, S: AsRef<str>>(docs: &[Vec<S>], params: &BtmParams) -> Result<BtmModel<T>> {
    let vocabulary = Vocabulary::fit(docs);
    let encoded: Vec<Vec<usize>> = docs.iter().map(|d| vocabulary.encode(d)).collect();
    let biterms: Vec<(usize, usize)> = encoded.iter().flat_map(|d| extract_biterms(d, params.window)).collect();
    let mut s = BtmSampler::<T>::new(biterms, vocabulary.len(), params)?;
    for _ in 0..params.iterations {
        s.sweep();
    }
    let mut m = BtmModel {
        version: BTM_FORMAT_VERSION,
        k: params.k,
        alpha: s.alpha,
        beta: s.beta,
        iterations: params.iterations,
        seed: params.seed,
        window: params.window,
        vocabulary,
        topic_biterm_counts: s.topic_biterms,
        topic_word_counts: s.topic_word,
        biterms: s.biterms,
        biterm_topics: s.z,
        doc_topics: Vec::new(),
    };
    m.doc_topics = encoded.iter().map(|d| m.infer_ids(d)).collect();
    Ok(m)
}

impl<T: Scalar> BtmModel<T> {
    pub fn theta(&self) -> Vec<T> {
        let mut p: Vec<T> = self
            .topic_biterm_counts
            .iter()
            .map(|&c| T::of(c as f64) + self.alpha)
            .collect();
        normalize(&mut p);
        p
    }

    pub fn phi(&self, t: usize) -> Vec<T> {
        let v = self.vocabulary.len();
        let denom = T::of(2.0 * self.topic_biterm_counts[t] as f64) + T::of_usize(v) * self.beta;
        self.topic_word_counts[t]
            .iter()
            .map(|&c| (T::of(c as f64) + self.beta) / denom)
            .collect()
    }

    /// P(z | d) as the average of P(z | b) over the document's biterms. A
    /// document with one distinct term uses P(z | w); one with none gets the
    /// corpus topic proportions.
    fn infer_ids(&self, doc: &[usize]) -> Vec<T> {
        let theta = self.theta();
        let phis: Vec<Vec<T>> = (0..self.k).map(|t| self.phi(t)).collect();
        let biterms = extract_biterms(doc, self.window);
        if biterms.is_empty() {
            let mut p = theta.clone();
            if let Some(&w) = doc.first() {
                for (t, x) in p.iter_mut().enumerate() {
                    *x = *x * phis[t][w];
                }
                normalize(&mut p);
            }
            return p;
        }
        let mut acc = vec![T::zero(); self.k];
        for &(w1, w2) in &biterms {
            let mut pb: Vec<T> = (0..self.k).map(|t| theta[t] * phis[t][w1] * phis[t][w2]).collect();
            normalize(&mut pb);
            for (a, p) in acc.iter_mut().zip(pb) {
                *a = *a + p;
            }
        }
        normalize(&mut acc);
        acc
    }

    pub fn infer<S: AsRef<str>>(&self, doc: &[S]) -> Vec<T> {
        self.infer_ids(&self.vocabulary.encode(doc))
    }

    pub fn dominant_topics(&self) -> Vec<usize> {
        self.doc_topics.iter().map(|p| argmax(p)).collect()
    }

    pub fn top_words(&self, t: usize, n: usize) -> Vec<&str> {
        let row = &self.topic_word_counts[t];
        let mut ids: Vec<usize> = (0..row.len()).collect();
        ids.sort_by(|&a, &b| row[b].cmp(&row[a]).then(a.cmp(&b)));
        ids.into_iter().take(n).map(|i| self.vocabulary.term(i)).collect()
    }
}

impl<T: Scalar + Serialize + for<'de> Deserialize<'de>> BtmModel<T> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let mut m: Self = serde_json::from_str(src)?;
        if m.version != BTM_FORMAT_VERSION {
            return Err(Error::Version {
                what: "BTM model".into(),
                found: m.version,
                expected: BTM_FORMAT_VERSION,
            });
        }
        m.vocabulary.reindex();
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::lda::tests::{disjoint_corpus, purity};

    fn params(k: usize) -> BtmParams {
        BtmParams {
            k,
            alpha: Some(0.1),
            beta: 0.01,
            iterations: 100,
            seed: 3,
            window: None,
        }
    }

    #[test]
    fn biterm_enumeration() {
        assert_eq!(extract_biterms(&[0, 1, 2], None), [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(extract_biterms(&[0, 1, 2], Some(3)), [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(extract_biterms(&[0, 1, 2], Some(1)), [(0, 1), (1, 2)]);
        assert_eq!(extract_biterms(&[2, 2], None), []);
        assert_eq!(extract_biterms(&[2, 0], None), [(0, 2)]);
    }

    #[test]
    fn single_term_documents_error() {
        let docs = vec![
            vec!["a".to_string()],
            vec!["b".to_string()],
            vec!["a".to_string(), "a".to_string()],
        ];
        assert!(matches!(
            train_btm::<f64, String>(&docs, &params(2)),
            Err(Error::Empty(_))
        ));
    }

    #[test]
    fn recovers_disjoint_topics() {
        let (docs, group) = disjoint_corpus();
        let m: BtmModel<f64> = train_btm(&docs, &params(2)).unwrap();
        assert!(purity(&m.dominant_topics(), &group, 2) >= 0.9);
        for p in &m.doc_topics {
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sweeps_conserve_counts() {
        let (docs, _) = disjoint_corpus();
        let vocab = Vocabulary::fit(&docs);
        let biterms: Vec<_> = docs
            .iter()
            .flat_map(|d| extract_biterms(&vocab.encode(d), None))
            .collect();
        let n = biterms.len();
        let mut s = BtmSampler::<f64>::new(biterms, vocab.len(), &params(3)).unwrap();
        for _ in 0..10 {
            s.sweep();
            assert_eq!(s.total_assignments(), n);
            assert_eq!(s.total_word_assignments(), 2 * n);
            let p = s.conditional(5);
            assert!(p.iter().all(|&x| x >= 0.0));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn deterministic_and_roundtrip() {
        let (docs, _) = disjoint_corpus();
        let a: BtmModel<f64> = train_btm(&docs, &params(2)).unwrap();
        let b: BtmModel<f64> = train_btm(&docs, &params(2)).unwrap();
        assert_eq!(a, b);
        let back = BtmModel::<f64>::from_json(&a.to_json().unwrap()).unwrap();
        assert_eq!(back.infer(&docs[1]), a.infer(&docs[1]));
    }
}
