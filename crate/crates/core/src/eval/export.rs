//! CSV renderings of reports and matrices.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::metrics::{normalize_confusion, ConfusionMatrix, EvalReport};
use crate::error::{Error, Result};

fn opt(x: Option<f64>, digits: usize) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.digits$}"))
}

fn pct(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{:.0}", v * 100.0))
}

fn count_pct(n: usize, total: usize) -> String {
    if total == 0 {
        return format!("{n} (-)");
    }
    format!("{n} ({:.2}%)", 100.0 * n as f64 / total as f64)
}

/// One row per class plus a Total row: correctly and incorrectly classified
/// (counted over actual instances), precision, recall, F-measure and kappa.
pub fn report_csv(report: &EvalReport) -> String {
    let mut s = String::from("Class,Correctly Classified,Incorrectly Classified,Precision,Recall,F-Measure,Kappa\n");
    for c in &report.matrix.classes {
        let m = &report.per_class[c];
        let _ = writeln!(
            s,
            "{c},{},{},{},{},{},",
            count_pct(m.correct, m.support),
            count_pct(m.support - m.correct, m.support),
            opt(m.precision, 2),
            opt(m.recall, 2),
            opt(m.f1, 2),
        );
    }
    let total = report.correct + report.incorrect;
    let _ = writeln!(
        s,
        "Total,{},{},{},{},{},{}",
        count_pct(report.correct, total),
        count_pct(report.incorrect, total),
        opt(report.weighted_precision, 2),
        opt(report.weighted_recall, 2),
        opt(report.weighted_f1, 2),
        opt(report.kappa, 2),
    );
    s
}

/// Matrix with predicted classes as rows; `normalized` divides each row by
/// its sum.
pub fn confusion_csv(m: &ConfusionMatrix, normalized: bool) -> String {
    let mut s = String::from("predicted\\actual");
    for c in &m.classes {
        let _ = write!(s, ",{c}");
    }
    s.push('\n');
    let norm = normalize_confusion(m);
    for (i, c) in m.classes.iter().enumerate() {
        s.push_str(c);
        for j in 0..m.classes.len() {
            if normalized {
                let _ = write!(s, ",{:.4}", norm[i][j]);
            } else {
                let _ = write!(s, ",{}", m.counts[i][j]);
            }
        }
        s.push('\n');
    }
    s
}

/// Recall and precision of one method per class, plus totals on processed
/// and (optionally) unprocessed text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub method: String,
    pub per_class: BTreeMap<String, (Option<f64>, Option<f64>)>,
    pub total_processed: (Option<f64>, Option<f64>),
    pub total_unprocessed: Option<(Option<f64>, Option<f64>)>,
}

impl ComparisonRow {
    pub fn from_reports(method: impl Into<String>, processed: &EvalReport, unprocessed: Option<&EvalReport>) -> Self {
        ComparisonRow {
            method: method.into(),
            per_class: processed
                .per_class
                .iter()
                .map(|(c, m)| (c.clone(), (m.recall, m.precision)))
                .collect(),
            total_processed: (processed.weighted_recall, processed.weighted_precision),
            total_unprocessed: unprocessed.map(|u| (u.weighted_recall, u.weighted_precision)),
        }
    }
}

/// Grid with R and P columns per class in `class_order`, then Total[P] and
/// Total[UP]. Values are percentages; `-` marks a gap.
pub fn comparison_csv(rows: &[ComparisonRow], class_order: &[String]) -> Result<String> {
    if rows.len() < 2 {
        return Err(Error::InvalidArgument("a comparison needs at least two reports".into()));
    }
    let first: Vec<&String> = rows[0].per_class.keys().collect();
    if let Some(r) = rows.iter().find(|r| r.per_class.keys().collect::<Vec<_>>() != first) {
        return Err(Error::InvalidArgument(format!(
            "report for {} has a different label set",
            r.method
        )));
    }
    let mut s = String::from("Algorithm");
    for c in class_order {
        let _ = write!(s, ",{c} R,{c} P");
    }
    s.push_str(",Total[P] R,Total[P] P,Total[UP] R,Total[UP] P\n");
    for r in rows {
        s.push_str(&r.method);
        for c in class_order {
            let (rec, prec) = r.per_class.get(c).copied().unwrap_or((None, None));
            let _ = write!(s, ",{},{}", pct(rec), pct(prec));
        }
        let (ur, up) = r.total_unprocessed.unwrap_or((None, None));
        let _ = writeln!(
            s,
            ",{},{},{},{}",
            pct(r.total_processed.0),
            pct(r.total_processed.1),
            pct(ur),
            pct(up)
        );
    }
    Ok(s)
}
