use serde::{Deserialize, Serialize};

use super::metrics::{metrics, ConfusionMatrix, EvalReport};
use crate::corpus::FoldPlan;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    /// Predictions pooled over every fold of every run.
    pub pooled: EvalReport,
    pub per_run: Vec<EvalReport>,
    /// `fold_matrices[run][fold]`.
    pub fold_matrices: Vec<Vec<ConfusionMatrix>>,
}

/// Run `train_predict(train, test)` for every fold of every run in `folds`
/// and pool the predictions. `truth[i]` is the label of item `i` in fold-plan
/// order. Every class in `classes` must be present in each training split.
pub fn cross_validate<F>(
    truth: &[String],
    classes: &[String],
    folds: &FoldPlan,
    mut train_predict: F,
) -> Result<CvReport>
where
    F: FnMut(&[usize], &[usize]) -> Result<Vec<String>>,
{
    if truth.len() != folds.ids.len() {
        return Err(Error::DimensionMismatch {
            expected: folds.ids.len(),
            actual: truth.len(),
        });
    }
    let mut pooled = ConfusionMatrix::zeros(classes.to_vec());
    let mut per_run = Vec::with_capacity(folds.runs);
    let mut fold_matrices = Vec::with_capacity(folds.runs);
    for run in 0..folds.runs {
        let mut run_matrix = ConfusionMatrix::zeros(classes.to_vec());
        let mut fms = Vec::with_capacity(folds.k);
        for fold in 0..folds.k {
            let train = folds.train_indices(run, fold);
            let test = folds.test_indices(run, fold);
            for c in classes {
                if !train.iter().any(|&i| &truth[i] == c) {
                    return Err(Error::FoldMissingClass {
                        run,
                        fold,
                        class: c.clone(),
                    });
                }
            }
            let predicted = train_predict(&train, &test)?;
            if predicted.len() != test.len() {
                return Err(Error::DimensionMismatch {
                    expected: test.len(),
                    actual: predicted.len(),
                });
            }
            let mut fm = ConfusionMatrix::zeros(classes.to_vec());
            for (p, &i) in predicted.iter().zip(&test) {
                fm.record(p, &truth[i])?;
            }
            run_matrix.add(&fm)?;
            fms.push(fm);
        }
        pooled.add(&run_matrix)?;
        per_run.push(metrics(&run_matrix));
        fold_matrices.push(fms);
    }
    Ok(CvReport {
        pooled: metrics(&pooled),
        per_run,
        fold_matrices,
    })
}
