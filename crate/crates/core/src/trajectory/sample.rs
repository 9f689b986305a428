use std::ops::Range;

use thiserror::Error;

use crate::geometry::Location;
use crate::ids::PartitionId;
use crate::indoor::{IndoorGraph, ModelError};

/// Mass tolerance for normalized sample sets.
pub const MASS_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("sample probability {0} outside (0, 1]")]
    BadProbability(f64),
    #[error("sample probabilities sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One possible location with its probability. `partition` is the location's host.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub location: Location,
    pub rho: f64,
    pub partition: PartitionId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Original,
    Derived,
}

/// Samples of one object falling in one partition, plus their merged mass.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionGroup {
    pub partition: PartitionId,
    pub range: Range<usize>,
    pub mass: f64,
}

/// Probabilistic location of one object at one sampling time.
///
/// Samples are stored grouped by partition (ascending id, insertion order within a
/// partition), so per-partition merges are precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    kind: SampleKind,
    samples: Vec<Sample>,
    groups: Vec<PartitionGroup>,
}

impl SampleSet {
    pub fn empty(kind: SampleKind) -> Self {
        SampleSet {
            kind,
            samples: Vec::new(),
            groups: Vec::new(),
        }
    }

    /// Certain sample at `location`.
    pub fn original(graph: &IndoorGraph, location: Location) -> Result<Self, ModelError> {
        let partition = graph.host(&location)?;
        Ok(Self::original_in(location, partition))
    }

    pub(crate) fn original_in(location: Location, partition: PartitionId) -> Self {
        let samples = vec![Sample {
            location,
            rho: 1.0,
            partition,
        }];
        SampleSet {
            kind: SampleKind::Original,
            groups: vec![PartitionGroup {
                partition,
                range: 0..1,
                mass: 1.0,
            }],
            samples,
        }
    }

    /// Validated set; probabilities must lie in (0, 1] and sum to 1 (or the set is empty).
    pub fn new(kind: SampleKind, samples: Vec<Sample>) -> Result<Self, SampleError> {
        let mut total = 0.0;
        for s in &samples {
            if !(s.rho > 0.0 && s.rho <= 1.0) {
                return Err(SampleError::BadProbability(s.rho));
            }
            total += s.rho;
        }
        if !samples.is_empty() && (total - 1.0).abs() > MASS_EPS {
            return Err(SampleError::NotNormalized(total));
        }
        Ok(Self::grouped(kind, samples))
    }

    /// Samples at the given locations with probabilities, hosting each location.
    pub fn located(graph: &IndoorGraph, kind: SampleKind, items: &[(Location, f64)]) -> Result<Self, SampleError> {
        let samples = items
            .iter()
            .map(|&(location, rho)| {
                Ok(Sample {
                    location,
                    rho,
                    partition: graph.host(&location)?,
                })
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        Self::new(kind, samples)
    }

    /// Uniform distribution over `points`, already tagged with their partitions.
    pub fn uniform(kind: SampleKind, points: Vec<(Location, PartitionId)>) -> Self {
        let rho = if points.is_empty() {
            0.0
        } else {
            1.0 / points.len() as f64
        };
        let samples = points
            .into_iter()
            .map(|(location, partition)| Sample {
                location,
                rho,
                partition,
            })
            .collect();
        Self::grouped(kind, samples)
    }

    fn grouped(kind: SampleKind, mut samples: Vec<Sample>) -> Self {
        samples.sort_by_key(|s| s.partition);
        let mut groups: Vec<PartitionGroup> = Vec::new();
        for (i, s) in samples.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if g.partition == s.partition => {
                    g.range.end = i + 1;
                    g.mass += s.rho;
                }
                _ => groups.push(PartitionGroup {
                    partition: s.partition,
                    range: i..i + 1,
                    mass: s.rho,
                }),
            }
        }
        SampleSet { kind, samples, groups }
    }

    pub fn kind(&self) -> SampleKind {
        self.kind
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Merged samples: one group per partition.
    pub fn groups(&self) -> &[PartitionGroup] {
        &self.groups
    }

    pub fn group_samples(&self, g: &PartitionGroup) -> &[Sample] {
        &self.samples[g.range.clone()]
    }

    pub fn total_mass(&self) -> f64 {
        self.samples.iter().map(|s| s.rho).sum()
    }

    /// Partitions hosting at least one sample, ascending.
    pub fn partitions(&self) -> impl Iterator<Item = PartitionId> + '_ {
        self.groups.iter().map(|g| g.partition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: f64, p: u32, rho: f64) -> Sample {
        Sample {
            location: Location::new(x, 0.0, 0),
            rho,
            partition: PartitionId(p),
        }
    }

    #[test]
    fn groups_by_partition() {
        let set = SampleSet::new(SampleKind::Derived, vec![s(0.0, 3, 0.5), s(1.0, 1, 0.2), s(2.0, 3, 0.3)]).unwrap();
        let g = set.groups();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].partition, PartitionId(1));
        assert!((g[1].mass - 0.8).abs() < 1e-15);
        assert_eq!(set.group_samples(&g[1]).len(), 2);
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(matches!(
            SampleSet::new(SampleKind::Derived, vec![s(0.0, 1, 0.5)]),
            Err(SampleError::NotNormalized(_))
        ));
        assert!(matches!(
            SampleSet::new(SampleKind::Derived, vec![s(0.0, 1, 0.0), s(0.0, 1, 1.0)]),
            Err(SampleError::BadProbability(_))
        ));
        assert!(SampleSet::new(SampleKind::Derived, vec![]).unwrap().is_empty());
    }

    #[test]
    fn uniform_is_normalized() {
        let pts = (0..7).map(|i| (Location::new(i as f64, 0.0, 0), PartitionId(i % 2))).collect();
        let set = SampleSet::uniform(SampleKind::Derived, pts);
        assert!((set.total_mass() - 1.0).abs() < MASS_EPS);
        assert!(set.samples().iter().all(|x| x.rho == 1.0 / 7.0));
    }
}
