use serde::{Deserialize, Serialize};

use crate::geometry::Location;
use crate::ids::PartitionId;
use crate::indoor::{IndoorGraph, Staircase};
use crate::trajectory::{PartitionGroup, Sample, SampleSet};

/// Tolerance on probability threshold comparisons.
pub const PROB_EPS: f64 = 1e-9;

/// Distance constraint `delta` (m), probability threshold `eta` and contact number `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactParams {
    pub delta: f64,
    pub eta: f64,
    pub k: u32,
}

impl Default for ContactParams {
    fn default() -> Self {
        ContactParams {
            delta: 2.0,
            eta: 0.5,
            k: 18,
        }
    }
}

impl ContactParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(format!("delta must be positive, got {}", self.delta));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(format!("eta must lie in (0, 1], got {}", self.eta));
        }
        if self.k == 0 {
            return Err("k must be at least 1".into());
        }
        Ok(())
    }
}

/// Outcome of one instant-contact decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub contact: bool,
    /// Sample pairs whose distance was computed.
    pub pair_evals: u64,
}

fn stair(graph: &IndoorGraph, v: PartitionId) -> Option<Staircase> {
    graph.partition(v).ok().and_then(|p| p.staircase)
}

fn within(stair: Option<Staircase>, a: &Location, b: &Location) -> f64 {
    let planar = a.planar_distance(b);
    match stair {
        Some(s) if a.floor != b.floor => planar + s.length,
        _ => planar,
    }
}

/// Contact distance between two samples: finite only inside a shared partition.
pub fn sample_distance(graph: &IndoorGraph, a: &Sample, b: &Sample) -> f64 {
    if a.partition == b.partition {
        within(stair(graph, a.partition), &a.location, &b.location)
    } else {
        f64::INFINITY
    }
}

/// Probability that the two objects are within `delta` of each other: the summed
/// `rho * rho'` over sample pairs at contact distance below `delta`. Zero if either set is empty.
pub fn contact_probability(graph: &IndoorGraph, a: &SampleSet, b: &SampleSet, delta: f64) -> f64 {
    let mut p = 0.0;
    for sa in a.samples() {
        for sb in b.samples() {
            if sample_distance(graph, sa, sb) < delta {
                p += sa.rho * sb.rho;
            }
        }
    }
    p
}

/// Instant contact by visiting every sample pair.
pub fn sequential_decision(graph: &IndoorGraph, a: &SampleSet, b: &SampleSet, delta: f64, eta: f64) -> Decision {
    let p = contact_probability(graph, a, b, delta);
    Decision {
        contact: p >= eta - PROB_EPS,
        pair_evals: (a.len() * b.len()) as u64,
    }
}

/// Instant contact with partition-level pruning.
///
/// Merged masses of different partitions are summed first and the decision is negative as
/// soon as that non-contact mass exceeds `1 - eta`. Only pairs inside a shared partition are
/// then measured, stopping once the accumulated probability reaches `eta`.
pub fn constrained_decision(graph: &IndoorGraph, a: &SampleSet, b: &SampleSet, delta: f64, eta: f64) -> Decision {
    let negative = Decision {
        contact: false,
        pair_evals: 0,
    };
    if a.is_empty() || b.is_empty() {
        return negative;
    }
    let mut np = 0.0;
    for ga in a.groups() {
        for gb in b.groups() {
            if ga.partition != gb.partition {
                np += ga.mass * gb.mass;
                if np > 1.0 - eta + PROB_EPS {
                    return negative;
                }
            }
        }
    }
    let mut p = 0.0;
    let mut evals = 0;
    for (ga, gb) in common_groups(a.groups(), b.groups()) {
        let st = stair(graph, ga.partition);
        for sa in a.group_samples(ga) {
            for sb in b.group_samples(gb) {
                evals += 1;
                if within(st, &sa.location, &sb.location) < delta {
                    p += sa.rho * sb.rho;
                    if p >= eta - PROB_EPS {
                        return Decision {
                            contact: true,
                            pair_evals: evals,
                        };
                    }
                }
            }
        }
    }
    Decision {
        contact: false,
        pair_evals: evals,
    }
}

/// Group pairs sharing a partition; both inputs ascend by partition id.
fn common_groups<'a>(
    a: &'a [PartitionGroup],
    b: &'a [PartitionGroup],
) -> impl Iterator<Item = (&'a PartitionGroup, &'a PartitionGroup)> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].partition.cmp(&b[j].partition) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let out = (&a[i], &b[j]);
                    i += 1;
                    j += 1;
                    return Some(out);
                }
            }
        }
        None
    })
}
