use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square count matrix; `counts[p][a]` is the number of instances predicted
/// as `classes[p]` whose actual class is `classes[a]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub classes: Vec<String>,
    pub counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn zeros(classes: Vec<String>) -> Self {
        let n = classes.len();
        ConfusionMatrix {
            classes,
            counts: vec![vec![0; n]; n],
        }
    }

    pub fn index(&self, class: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn get(&self, predicted: &str, actual: &str) -> usize {
        match (self.index(predicted), self.index(actual)) {
            (Some(p), Some(a)) => self.counts[p][a],
            _ => 0,
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> usize {
        (0..self.classes.len()).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_sum(&self, p: usize) -> usize {
        self.counts[p].iter().sum()
    }

    pub fn col_sum(&self, a: usize) -> usize {
        self.counts.iter().map(|r| r[a]).sum()
    }

    /// Add another matrix over the same classes.
    pub fn add(&mut self, other: &ConfusionMatrix) -> Result<()> {
        if self.classes != other.classes {
            return Err(Error::InvalidArgument(
                "confusion matrices have different class lists".into(),
            ));
        }
        for (r, o) in self.counts.iter_mut().zip(&other.counts) {
            for (x, y) in r.iter_mut().zip(o) {
                *x += y;
            }
        }
        Ok(())
    }

    pub fn record(&mut self, predicted: &str, actual: &str) -> Result<()> {
        let p = self
            .index(predicted)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class {predicted:?}")))?;
        let a = self
            .index(actual)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class {actual:?}")))?;
        self.counts[p][a] += 1;
        Ok(())
    }
}

/// Build a matrix over `classes`; when `classes` is empty the sorted union of
/// the observed labels is used.
pub fn confusion<S: AsRef<str>>(predictions: &[S], truth: &[S], classes: &[String]) -> Result<ConfusionMatrix> {
    if predictions.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            actual: predictions.len(),
        });
    }
    if truth.is_empty() {
        return Err(Error::Empty("no predictions to score".into()));
    }
    let classes = if classes.is_empty() {
        let mut c: Vec<String> = predictions
            .iter()
            .chain(truth)
            .map(|s| s.as_ref().to_string())
            .collect();
        c.sort();
        c.dedup();
        c
    } else {
        classes.to_vec()
    };
    let mut m = ConfusionMatrix::zeros(classes);
    for (p, a) in predictions.iter().zip(truth) {
        m.record(p.as_ref(), a.as_ref())?;
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    /// `None` when nothing was predicted as this class.
    pub precision: Option<f64>,
    /// `None` when the class has no actual instances.
    pub recall: Option<f64>,
    pub f1: Option<f64>,
    /// Actual instances of the class.
    pub support: usize,
    pub predicted: usize,
    pub correct: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub matrix: ConfusionMatrix,
    pub per_class: BTreeMap<String, ClassMetrics>,
    pub weighted_precision: Option<f64>,
    pub weighted_recall: Option<f64>,
    pub weighted_f1: Option<f64>,
    pub accuracy: f64,
    pub kappa: Option<f64>,
    pub correct: usize,
    pub incorrect: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Cohen's kappa; `None` when chance agreement is 1 or the matrix is empty.
pub fn kappa(m: &ConfusionMatrix) -> Option<f64> {
    let n = m.total();
    if n == 0 {
        return None;
    }
    let n2 = (n as f64) * (n as f64);
    let po = m.trace() as f64 / n as f64;
    let pe: f64 = (0..m.classes.len())
        .map(|c| m.row_sum(c) as f64 * m.col_sum(c) as f64)
        .sum::<f64>()
        / n2;
    (pe < 1.0).then(|| (po - pe) / (1.0 - pe))
}

fn weighted(values: impl Iterator<Item = (Option<f64>, usize)>) -> Option<f64> {
    let (mut num, mut den) = (0.0, 0usize);
    for (v, w) in values {
        if let Some(v) = v {
            num += v * w as f64;
            den += w;
        }
    }
    (den > 0).then(|| num / den as f64)
}

pub fn metrics(m: &ConfusionMatrix) -> EvalReport {
    let mut per_class = BTreeMap::new();
    let mut warnings = Vec::new();
    for (i, c) in m.classes.iter().enumerate() {
        let (diag, predicted, support) = (m.counts[i][i], m.row_sum(i), m.col_sum(i));
        let precision = ratio(diag, predicted);
        let recall = ratio(diag, support);
        if precision.is_none() && support > 0 {
            warnings.push(format!(
                "precision undefined for {c}: no instance predicted; excluded from weighted precision"
            ));
        }
        let f1 = match (precision, recall) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            (Some(_), Some(_)) => Some(0.0),
            _ => None,
        };
        per_class.insert(
            c.clone(),
            ClassMetrics {
                precision,
                recall,
                f1,
                support,
                predicted,
                correct: diag,
            },
        );
    }
    let w = |f: fn(&ClassMetrics) -> Option<f64>| weighted(per_class.values().map(|c| (f(c), c.support)));
    let total = m.total();
    EvalReport {
        weighted_precision: w(|c| c.precision),
        weighted_recall: w(|c| c.recall),
        weighted_f1: w(|c| c.f1),
        accuracy: ratio(m.trace(), total).unwrap_or(0.0),
        kappa: kappa(m),
        correct: m.trace(),
        incorrect: total - m.trace(),
        per_class,
        matrix: m.clone(),
        warnings,
    }
}

/// Divide each row by its sum; zero rows stay zero.
pub fn normalize_confusion(m: &ConfusionMatrix) -> Vec<Vec<f64>> {
    m.counts
        .iter()
        .map(|row| {
            let s: usize = row.iter().sum();
            row.iter()
                .map(|&x| if s > 0 { x as f64 / s as f64 } else { 0.0 })
                .collect()
        })
        .collect()
}

impl EvalReport {
    pub fn from_predictions<S: AsRef<str>>(predictions: &[S], truth: &[S], classes: &[String]) -> Result<Self> {
        Ok(metrics(&confusion(predictions, truth, classes)?))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn classes(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn matrix(cls: &[&str], counts: Vec<Vec<usize>>) -> ConfusionMatrix {
        ConfusionMatrix {
            classes: classes(cls),
            counts,
        }
    }

    #[test]
    fn small_examples() {
        let m = confusion(&["X", "X"], &["X", "Y"], &[]).unwrap();
        assert_eq!((m.get("X", "X"), m.get("X", "Y"), m.get("Y", "Y")), (1, 1, 0));
        let m = confusion(&["A", "B", "C"], &["A", "B", "C"], &[]).unwrap();
        let r = metrics(&m);
        assert_eq!((r.accuracy, r.kappa, r.weighted_f1), (1.0, Some(1.0), Some(1.0)));
        assert!(confusion(&["A"], &["A", "B"], &[]).is_err());
        assert!(confusion::<&str>(&[], &[], &[]).is_err());
    }

    #[test]
    fn hand_kappa() {
        // p_o = 35/50, p_e = (25*30 + 25*20)/2500 = 0.5
        let m = matrix(&["a", "b"], vec![vec![20, 5], vec![10, 15]]);
        assert!((kappa(&m).unwrap() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn published_binary_matrices() {
        // rows predicted NFR, FR; columns actual NFR, FR
        let raw = matrix(&["NFR", "FR"], vec![vec![325, 18], vec![45, 237]]);
        let r = metrics(&raw);
        assert!((r.accuracy - 0.8992).abs() < 1e-4);
        assert!((r.kappa.unwrap() - 0.79).abs() < 0.005);
        assert!((r.per_class["NFR"].precision.unwrap() - 0.95).abs() < 0.005);
        assert!((r.per_class["NFR"].recall.unwrap() - 0.88).abs() < 0.005);
        assert!((r.weighted_precision.unwrap() - 0.90).abs() < 0.005);
        let processed = matrix(&["NFR", "FR"], vec![vec![344, 9], vec![26, 246]]);
        let r = metrics(&processed);
        assert!((r.accuracy - 0.944).abs() < 1e-12);
        assert!((r.kappa.unwrap() - 0.89).abs() < 0.005);
        assert!((r.weighted_precision.unwrap() - 0.95).abs() < 0.005);
        assert!((r.weighted_recall.unwrap() - 0.94).abs() < 0.005);
    }

    #[test]
    fn undefined_precision_is_a_gap() {
        let m = matrix(&["a", "b"], vec![vec![3, 2], vec![0, 0]]);
        let r = metrics(&m);
        assert_eq!(r.per_class["b"].precision, None);
        assert_eq!(r.weighted_precision, Some(0.6));
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn normalization() {
        let m = matrix(&["a", "b"], vec![vec![2, 2], vec![0, 4]]);
        assert_eq!(normalize_confusion(&m), [[0.5, 0.5], [0.0, 1.0]]);
        let z = matrix(&["a", "b"], vec![vec![0, 0], vec![0, 3]]);
        assert_eq!(normalize_confusion(&z), [[0.0, 0.0], [0.0, 1.0]]);
    }

    proptest! {
        #[test]
        fn weighted_recall_is_accuracy(pairs in prop::collection::vec((0usize..4, 0usize..4), 1..200)) {
            let cls = ["a", "b", "c", "d"];
            let p: Vec<&str> = pairs.iter().map(|x| cls[x.0]).collect();
            let t: Vec<&str> = pairs.iter().map(|x| cls[x.1]).collect();
            let r = EvalReport::from_predictions(&p, &t, &classes(&cls)).unwrap();
            prop_assert!((r.weighted_recall.unwrap() - r.accuracy).abs() < 1e-12);
            if let Some(k) = r.kappa {
                prop_assert!(k <= r.accuracy + 1e-12);
            }
            prop_assert_eq!(r.matrix.total(), pairs.len());
        }
    }
}
