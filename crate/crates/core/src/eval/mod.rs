//! Confusion matrices, precision/recall/F1, kappa, cluster diagnostics and
//! cross-validation.

mod cluster_stats;
mod cv;
mod export;
mod metrics;

pub use cluster_stats::{hopkins, hopkins_mean, silhouette, ClusterDiagnostics, Silhouette};
pub use cv::{cross_validate, CvReport};
pub use export::{comparison_csv, confusion_csv, report_csv, ComparisonRow};
pub use metrics::{confusion, kappa, metrics, normalize_confusion, ClassMetrics, ConfusionMatrix, EvalReport};
