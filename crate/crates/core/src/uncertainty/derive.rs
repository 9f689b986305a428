use thiserror::Error;

use super::lattice::LatticeIndex;
use super::region::{find_iur, Portion, UncertaintyRegion};
use crate::geometry::{Location, Rect};
use crate::ids::{ObjectId, PartitionId};
use crate::indoor::{IndoorGraph, ModelError};
use crate::trajectory::{Contextual, PositioningRecord, SampleKind, SampleSet, StoreError, TrajectoryStore};

/// Default maximum walking speed (m/s).
pub const DEFAULT_V_MAX: f64 = 1.4;
/// Default lattice side length (m).
pub const DEFAULT_LL: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeriveError {
    #[error("object {object}: time {t} is covered by a record, nothing to derive")]
    OriginalHit { object: ObjectId, t: f64 },
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// How the region an object can reach between two records is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionModel {
    /// Indoor uncertainty regions that only cross walls through doors.
    Indoor,
    /// Free-space circles that ignore walls.
    Euclidean,
}

/// Derives lattice sample sets at unseen sampling times.
#[derive(Debug, Clone, Copy)]
pub struct Deriver<'a> {
    graph: &'a IndoorGraph,
    lattices: &'a LatticeIndex,
    v_max: f64,
    model: RegionModel,
}

impl<'a> Deriver<'a> {
    pub fn new(graph: &'a IndoorGraph, lattices: &'a LatticeIndex, v_max: f64, model: RegionModel) -> Self {
        assert!(v_max > 0.0, "v_max must be positive");
        Deriver {
            graph,
            lattices,
            v_max,
            model,
        }
    }

    pub fn graph(&self) -> &'a IndoorGraph {
        self.graph
    }

    pub fn model(&self) -> RegionModel {
        self.model
    }

    /// Distances the object can cover since `prev` expired and until `next` is reported.
    pub fn budgets(&self, prev: &PositioningRecord, next: &PositioningRecord, t: f64) -> (f64, f64) {
        (
            ((t - prev.et) * self.v_max).max(0.0),
            ((next.t - t) * self.v_max).max(0.0),
        )
    }

    /// Both uncertainty regions at time `t`.
    pub fn regions(
        &self,
        prev: &PositioningRecord,
        next: &PositioningRecord,
        t: f64,
    ) -> Result<(UncertaintyRegion, UncertaintyRegion), ModelError> {
        let (dp, dn) = self.budgets(prev, next, t);
        Ok((
            find_iur(self.graph, &prev.location, dp)?,
            find_iur(self.graph, &next.location, dn)?,
        ))
    }

    /// Samples at time `t` strictly between `prev.et` and `next.t`.
    pub fn derive(&self, prev: &PositioningRecord, next: &PositioningRecord, t: f64) -> Result<SampleSet, ModelError> {
        let points = match self.model {
            RegionModel::Indoor => self.indoor_points(prev, next, t)?,
            RegionModel::Euclidean => self.euclidean_points(prev, next, t)?,
        };
        Ok(SampleSet::uniform(SampleKind::Derived, points))
    }

    /// Samples of `o` at `t`, looked up in `store`.
    pub fn derive_at(&self, store: &TrajectoryStore, o: ObjectId, t: f64) -> Result<SampleSet, DeriveError> {
        match store.contextual_records(o, t)? {
            Contextual::Between { prev, next } => Ok(self.derive(prev, next, t)?),
            Contextual::Original(_) => Err(DeriveError::OriginalHit { object: o, t }),
        }
    }

    /// Partitions that can host a sample derived at `t`, ascending.
    pub fn candidate_partitions(
        &self,
        prev: &PositioningRecord,
        next: &PositioningRecord,
        t: f64,
    ) -> Result<Vec<PartitionId>, ModelError> {
        match self.model {
            RegionModel::Indoor => {
                let (up, un) = self.regions(prev, next, t)?;
                Ok(up.partitions().filter(|&v| un.contains_partition(v)).collect())
            }
            RegionModel::Euclidean => {
                let (dp, dn) = self.budgets(prev, next, t);
                let Some(mbr) = circle_mbr(prev, next, dp, dn) else {
                    return Ok(Vec::new());
                };
                Ok(self
                    .graph
                    .partitions()
                    .iter()
                    .filter(|p| on_floors(p.floor, prev, next) && p.bbox.intersect(&mbr).is_some())
                    .map(|p| p.id)
                    .collect())
            }
        }
    }

    fn indoor_points(
        &self,
        prev: &PositioningRecord,
        next: &PositioningRecord,
        t: f64,
    ) -> Result<Vec<(Location, PartitionId)>, ModelError> {
        let (up, un) = self.regions(prev, next, t)?;
        let mut out = Vec::new();
        for v in up.partitions().filter(|&v| un.contains_partition(v)) {
            let lattice = self.lattices.lattice(v)?;
            let pts = lattice.points();
            let bbox = self.graph.partition(v)?.bbox;
            let mut marked = vec![false; pts.len()];
            let reach = |ps: &[Portion]| -> Result<Vec<f64>, ModelError> {
                ps.iter()
                    .map(|p| self.graph.max_vertex_distance(v, &p.location))
                    .collect()
            };
            let (pa_all, pb_all) = (up.portions(v), un.portions(v));
            let (ma_all, mb_all) = (reach(pa_all)?, reach(pb_all)?);
            for (pa, &ma) in pa_all.iter().zip(&ma_all) {
                for (pb, &mb) in pb_all.iter().zip(&mb_all) {
                    let gap = self.graph.intra_distance(v, &pa.location, &pb.location);
                    if pa.radius + pb.radius < gap {
                        continue;
                    }
                    if pa.radius > ma && pb.radius > mb {
                        marked.iter_mut().for_each(|m| *m = true);
                        continue;
                    }
                    let Some(mbr) = portion_mbr(pa)
                        .intersect(&portion_mbr(pb))
                        .and_then(|r| r.intersect(&bbox))
                    else {
                        continue;
                    };
                    for i in lattice.indices_in(&mbr) {
                        if !marked[i]
                            && self.graph.intra_distance(v, &pa.location, &pts[i]) < pa.radius
                            && self.graph.intra_distance(v, &pb.location, &pts[i]) < pb.radius
                        {
                            marked[i] = true;
                        }
                    }
                }
            }
            out.extend(pts.iter().zip(&marked).filter(|(_, &m)| m).map(|(l, _)| (*l, v)));
        }
        Ok(out)
    }

    fn euclidean_points(
        &self,
        prev: &PositioningRecord,
        next: &PositioningRecord,
        t: f64,
    ) -> Result<Vec<(Location, PartitionId)>, ModelError> {
        let (dp, dn) = self.budgets(prev, next, t);
        let Some(mbr) = circle_mbr(prev, next, dp, dn) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for p in self.graph.partitions() {
            if !on_floors(p.floor, prev, next) {
                continue;
            }
            let Some(clip) = p.bbox.intersect(&mbr) else {
                continue;
            };
            let lattice = self.lattices.lattice(p.id)?;
            let pts = lattice.points();
            out.extend(
                lattice
                    .indices_in(&clip)
                    .map(|i| pts[i])
                    .filter(|l| l.planar_distance(&prev.location) < dp && l.planar_distance(&next.location) < dn)
                    .map(|l| (l, p.id)),
            );
        }
        Ok(out)
    }
}

fn portion_mbr(p: &Portion) -> Rect {
    Rect::square(p.location.x, p.location.y, p.radius)
}

fn circle_mbr(prev: &PositioningRecord, next: &PositioningRecord, dp: f64, dn: f64) -> Option<Rect> {
    Rect::square(prev.location.x, prev.location.y, dp).intersect(&Rect::square(next.location.x, next.location.y, dn))
}

fn on_floors(floor: i32, prev: &PositioningRecord, next: &PositioningRecord) -> bool {
    floor == prev.location.floor || floor == next.location.floor
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::three_rooms;
    use crate::trajectory::MASS_EPS;

    fn rec(x: f64, y: f64, t: f64) -> PositioningRecord {
        PositioningRecord {
            location: Location::new(x, y, 0),
            t,
            et: t + 5.0,
        }
    }

    #[test]
    fn degenerate_intersection_is_one_point() {
        let g = three_rooms();
        let lat = LatticeIndex::new(&g, 0.4).unwrap();
        let d = Deriver::new(&g, &lat, DEFAULT_V_MAX, RegionModel::Indoor);
        // (2.0, 2.0) is a lattice point; 0.1 s of slack on each side
        let prev = PositioningRecord {
            location: Location::new(2.0, 2.0, 0),
            t: 0.0,
            et: 9.9,
        };
        let next = PositioningRecord {
            location: Location::new(2.0, 2.0, 0),
            t: 10.1,
            et: 15.0,
        };
        let s = d.derive(&prev, &next, 10.0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.samples()[0].rho, 1.0);
        assert!(s.samples()[0].location.planar_distance(&Location::new(2.0, 2.0, 0)) < 1e-12);

        // no slack at all: the strict checks leave nothing
        let tight = PositioningRecord { et: 10.0, ..prev };
        let next = PositioningRecord { t: 10.0, ..next };
        assert!(d.derive(&tight, &next, 10.0).unwrap().is_empty());
    }

    #[test]
    fn walls_block_indoor_but_not_euclidean() {
        // v1 and v4 touch only at a corner and share no door; v4 is unreachable
        let g = three_rooms();
        let lat = LatticeIndex::new(&g, 0.4).unwrap();
        let prev = rec(9.0, 9.0, 0.0);
        let next = rec(9.0, 9.0, 20.0);
        let t = 10.0;
        let indoor = Deriver::new(&g, &lat, DEFAULT_V_MAX, RegionModel::Indoor)
            .derive(&prev, &next, t)
            .unwrap();
        let euclid = Deriver::new(&g, &lat, DEFAULT_V_MAX, RegionModel::Euclidean)
            .derive(&prev, &next, t)
            .unwrap();
        assert!(indoor.partitions().all(|v| v != PartitionId(4)));
        assert!(euclid.partitions().any(|v| v == PartitionId(4)));
        for s in [&indoor, &euclid] {
            assert!((s.total_mass() - 1.0).abs() < MASS_EPS);
        }
    }

    #[test]
    fn samples_pass_portion_checks() {
        let g = three_rooms();
        let lat = LatticeIndex::new(&g, 0.4).unwrap();
        let d = Deriver::new(&g, &lat, DEFAULT_V_MAX, RegionModel::Indoor);
        let prev = rec(8.0, 5.0, 0.0);
        let next = rec(5.0, 12.0, 12.0);
        let t = 10.0;
        let s = d.derive(&prev, &next, t).unwrap();
        assert!(!s.is_empty());
        let (up, un) = d.regions(&prev, &next, t).unwrap();
        for smp in s.samples() {
            let v = smp.partition;
            let ok = up.portions(v).iter().any(|a| {
                un.portions(v).iter().any(|b| {
                    g.intra_distance(v, &a.location, &smp.location) < a.radius
                        && g.intra_distance(v, &b.location, &smp.location) < b.radius
                })
            });
            assert!(ok, "{smp:?}");
        }
        assert!(s.partitions().all(|v| v != PartitionId(2)));
        let candidates = d.candidate_partitions(&prev, &next, t).unwrap();
        assert!(s.partitions().all(|v| candidates.contains(&v)));
    }
}
