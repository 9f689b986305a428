use std::collections::BTreeSet;

use icq_core::ObjectId;
use serde::Serialize;

/// Recall, precision and their harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

pub fn f1(recall: f64, precision: f64) -> f64 {
    if recall + precision > 0.0 {
        2.0 * recall * precision / (recall + precision)
    } else {
        0.0
    }
}

/// Set-overlap scores of one answer.
///
/// An empty truth gives recall 1; an empty answer gives precision 1 only when the truth is
/// empty as well.
pub fn compute_metrics(result: &BTreeSet<ObjectId>, truth: &BTreeSet<ObjectId>) -> Metrics {
    let hits = result.intersection(truth).count() as f64;
    let recall = if truth.is_empty() { 1.0 } else { hits / truth.len() as f64 };
    let precision = match (result.is_empty(), truth.is_empty()) {
        (true, true) => 1.0,
        (true, false) => 0.0,
        _ => hits / result.len() as f64,
    };
    Metrics {
        recall,
        precision,
        f1: f1(recall, precision),
    }
}

/// Mean recall and precision over instances, with F1 taken from the two means.
pub fn mean_metrics(items: impl IntoIterator<Item = Metrics>) -> Metrics {
    let (mut r, mut p, mut n) = (0.0, 0.0, 0usize);
    for m in items {
        r += m.recall;
        p += m.precision;
        n += 1;
    }
    if n == 0 {
        return Metrics {
            recall: 1.0,
            precision: 1.0,
            f1: 1.0,
        };
    }
    let (recall, precision) = (r / n as f64, p / n as f64);
    Metrics {
        recall,
        precision,
        f1: f1(recall, precision),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u32]) -> BTreeSet<ObjectId> {
        ids.iter().map(|&i| ObjectId(i)).collect()
    }

    #[test]
    fn overlap() {
        let m = compute_metrics(&set(&[1, 2, 3, 4]), &set(&[2, 4, 6]));
        assert!((m.recall - 2.0 / 3.0).abs() < 1e-12);
        assert!((m.precision - 0.5).abs() < 1e-12);
        assert!((m.f1 - 4.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn empty_sets() {
        assert_eq!(compute_metrics(&set(&[]), &set(&[])).f1, 1.0);
        let m = compute_metrics(&set(&[]), &set(&[1]));
        assert_eq!((m.recall, m.precision, m.f1), (0.0, 0.0, 0.0));
        let m = compute_metrics(&set(&[1]), &set(&[]));
        assert_eq!((m.recall, m.precision), (1.0, 0.0));
    }

    #[test]
    fn means() {
        let a = compute_metrics(&set(&[1]), &set(&[1, 2]));
        let b = compute_metrics(&set(&[3]), &set(&[3]));
        let m = mean_metrics([a, b]);
        assert!((m.recall - 0.75).abs() < 1e-12);
        assert_eq!(m.precision, 1.0);
        assert!((m.f1 - f1(0.75, 1.0)).abs() < 1e-12);
    }
}
