//! Accuracy metrics, method comparisons and parameter sweeps over generated datasets.

mod metrics;
mod suite;

pub use metrics::{compute_metrics, f1, mean_metrics, Metrics};
pub use suite::{evaluate, run_suite, Dimension, MethodSummary, MetricsRow, SuiteError, SweepConfig, SweepTable};
