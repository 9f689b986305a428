use std::collections::HashMap;

use crate::geometry::{Location, Rect};
use crate::ids::PartitionId;
use crate::indoor::{IndoorGraph, ModelError};

const SNAP: f64 = 1e-9;

/// Lattice points of one partition: a grid of pitch `ll` anchored at the bounding-box min
/// corner, keeping the points the partition hosts. Points are stored row-major.
#[derive(Debug, Clone)]
pub struct Lattice {
    origin: (f64, f64),
    ll: f64,
    points: Vec<Location>,
    cols: Vec<u32>,
    row_start: Vec<usize>,
}

impl Lattice {
    pub fn build(graph: &IndoorGraph, v: PartitionId, ll: f64) -> Result<Self, ModelError> {
        assert!(ll > 0.0, "lattice side length must be positive");
        let p = graph.partition(v)?;
        let bbox = p.bbox;
        let nx = (bbox.width() / ll + SNAP).floor() as u32 + 1;
        let ny = (bbox.height() / ll + SNAP).floor() as u32 + 1;
        let mut points = Vec::new();
        let mut cols = Vec::new();
        let mut row_start = Vec::with_capacity(ny as usize + 1);
        for j in 0..ny {
            row_start.push(points.len());
            let y = bbox.min_y + f64::from(j) * ll;
            for i in 0..nx {
                let l = Location::new(bbox.min_x + f64::from(i) * ll, y, p.floor);
                if p.contains(&l) && graph.host(&l)? == v {
                    points.push(l);
                    cols.push(i);
                }
            }
        }
        row_start.push(points.len());
        Ok(Lattice {
            origin: (bbox.min_x, bbox.min_y),
            ll,
            points,
            cols,
            row_start,
        })
    }

    pub fn points(&self) -> &[Location] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Indices of the points inside `r` (closed), ascending.
    pub fn indices_in(&self, r: &Rect) -> impl Iterator<Item = usize> + '_ {
        let rows = self.row_start.len() as i64 - 1;
        let lo = |v: f64, o: f64| ((v - o) / self.ll - SNAP).ceil() as i64;
        let hi = |v: f64, o: f64| ((v - o) / self.ll + SNAP).floor() as i64;
        let (j0, j1) = (lo(r.min_y, self.origin.1).max(0), hi(r.max_y, self.origin.1).min(rows - 1));
        let (i0, i1) = (lo(r.min_x, self.origin.0).max(0), hi(r.max_x, self.origin.0));
        let j_range = if j0 <= j1 && i0 <= i1 {
            j0 as usize..j1 as usize + 1
        } else {
            0..0
        };
        let (i0, i1) = (i0 as u32, i1.min(i64::from(u32::MAX)) as u32);
        j_range.flat_map(move |j| {
            let (s, e) = (self.row_start[j], self.row_start[j + 1]);
            let row = &self.cols[s..e];
            let a = s + row.partition_point(|&c| c < i0);
            let b = s + row.partition_point(|&c| c <= i1);
            a..b
        })
    }
}

/// Lattices of every partition at one side length.
#[derive(Debug, Clone)]
pub struct LatticeIndex {
    ll: f64,
    lattices: HashMap<PartitionId, Lattice>,
}

impl LatticeIndex {
    pub fn new(graph: &IndoorGraph, ll: f64) -> Result<Self, ModelError> {
        let lattices = graph
            .partitions()
            .iter()
            .map(|p| Ok((p.id, Lattice::build(graph, p.id, ll)?)))
            .collect::<Result<_, ModelError>>()?;
        Ok(LatticeIndex { ll, lattices })
    }

    pub fn ll(&self) -> f64 {
        self.ll
    }

    pub fn lattice(&self, v: PartitionId) -> Result<&Lattice, ModelError> {
        self.lattices.get(&v).ok_or(ModelError::UnknownPartition(v))
    }

    pub fn total_points(&self) -> usize {
        self.lattices.values().map(Lattice::len).sum()
    }
}

/// Lattice points of `v` with pitch `ll`, row-major.
pub fn lattice_points(graph: &IndoorGraph, v: PartitionId, ll: f64) -> Result<Vec<Location>, ModelError> {
    Ok(Lattice::build(graph, v, ll)?.points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indoor::{Floor, PartitionSpec};
    use crate::test_util::{rect, three_rooms};

    fn unit_square() -> IndoorGraph {
        let floors = vec![Floor {
            level: 0,
            bounds: Rect::around(&rect(0.0, 0.0, 1.0, 1.0)),
        }];
        let parts = vec![PartitionSpec {
            id: PartitionId(1),
            floor: 0,
            polygon: rect(0.0, 0.0, 1.0, 1.0),
        }];
        IndoorGraph::build(floors, parts, vec![], vec![]).unwrap()
    }

    #[test]
    fn unit_square_has_nine_points() {
        let g = unit_square();
        let pts = lattice_points(&g, PartitionId(1), 0.4).unwrap();
        assert_eq!(pts.len(), 9);
        let xs: Vec<f64> = pts.iter().take(3).map(|p| p.x).collect();
        assert_eq!(xs, vec![0.0, 0.4, 0.8]);
        assert!(pts.windows(2).all(|w| (w[0].y, w[0].x) < (w[1].y, w[1].x)));
    }

    #[test]
    fn every_point_hosts_to_its_partition() {
        let g = three_rooms();
        let index = LatticeIndex::new(&g, 0.7).unwrap();
        for p in g.partitions() {
            let lat = index.lattice(p.id).unwrap();
            assert!(!lat.is_empty());
            for l in lat.points() {
                assert_eq!(g.host(l).unwrap(), p.id);
            }
        }
        // shared walls belong to the smaller id, so v2 loses its x = 10 column
        let v2 = index.lattice(PartitionId(2)).unwrap();
        assert!(v2.points().iter().all(|l| l.x > 10.0));
    }

    #[test]
    fn rect_query_matches_filter() {
        let g = three_rooms();
        let lat = Lattice::build(&g, PartitionId(1), 0.4).unwrap();
        for r in [
            Rect::square(3.3, 4.1, 1.7),
            Rect::square(0.0, 0.0, 0.5),
            Rect::square(-5.0, -5.0, 1.0),
            Rect::square(9.9, 9.9, 30.0),
            Rect::square(5.0, 5.0, 0.0),
        ] {
            let got: Vec<usize> = lat.indices_in(&r).collect();
            let want: Vec<usize> = (0..lat.len())
                .filter(|&i| r.contains(lat.points()[i].x, lat.points()[i].y, 1e-9))
                .collect();
            assert_eq!(got, want, "{r:?}");
        }
    }
}
