use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::geometry::{self, Location, Rect, GEOM_EPS};
use crate::ids::{DoorId, PartitionId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("duplicate floor level {0}")]
    DuplicateFloor(i32),
    #[error("floor {0} has an empty or inverted bounding box")]
    BadFloorBounds(i32),
    #[error("floor {0} does not exist")]
    UnknownFloor(i32),
    #[error("duplicate partition id {0}")]
    DuplicatePartition(PartitionId),
    #[error("duplicate door id {0}")]
    DuplicateDoor(DoorId),
    #[error("unknown partition {0}")]
    UnknownPartition(PartitionId),
    #[error("unknown door {0}")]
    UnknownDoor(DoorId),
    #[error("partition {0} polygon is not a simple polygon with positive area")]
    BadPolygon(PartitionId),
    #[error("partition {0} extends beyond the bounds of floor {1}")]
    OutsideFloor(PartitionId, i32),
    #[error("door {0} has no links")]
    DoorWithoutLinks(DoorId),
    #[error("door {0} has a self-link on partition {1}")]
    SelfLink(DoorId, PartitionId),
    #[error("door {0} links more than two partitions")]
    TooManyPartitions(DoorId),
    #[error("door {door} at ({x}, {y}, floor {floor}) is not on the boundary of partition {partition}")]
    DoorOffBoundary {
        door: DoorId,
        partition: PartitionId,
        x: f64,
        y: f64,
        floor: i32,
    },
    #[error("door {door} is not on partition {partition}")]
    DoorNotOnPartition { door: DoorId, partition: PartitionId },
    #[error("staircase {0} is invalid: {1}")]
    BadStaircase(PartitionId, String),
    #[error("location ({x}, {y}, floor {floor}) is not inside any partition (unlocatable point)")]
    Unlocatable { x: f64, y: f64, floor: i32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Floor {
    pub level: i32,
    pub bounds: Rect,
}

/// A staircase spans its base floor and `upper_floor`; crossing between floors costs `length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Staircase {
    pub upper_floor: i32,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub id: PartitionId,
    pub floor: i32,
    pub polygon: Vec<[f64; 2]>,
    pub bbox: Rect,
    /// Doors on the boundary, ascending.
    pub door_ids: Vec<DoorId>,
    pub staircase: Option<Staircase>,
}

impl Partition {
    pub fn centroid(&self) -> Location {
        let c = geometry::polygon_centroid(&self.polygon);
        Location::new(c[0], c[1], self.floor)
    }

    pub fn contains(&self, l: &Location) -> bool {
        l.floor == self.floor
            && self.bbox.contains(l.x, l.y, GEOM_EPS)
            && geometry::polygon_contains(&self.polygon, l.x, l.y, GEOM_EPS)
    }

    fn admits_floor(&self, floor: i32) -> bool {
        floor == self.floor || self.staircase.is_some_and(|s| s.upper_floor == floor)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Door {
    pub id: DoorId,
    pub location: Location,
    /// Traversal directions as (from, to) pairs.
    pub links: Vec<(PartitionId, PartitionId)>,
}

/// Directed edge: one can enter `to` from `from` through `door`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: PartitionId,
    pub to: PartitionId,
    pub door: DoorId,
}

/// Intra-partition door-to-door distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DoorMatrix {
    doors: Vec<DoorId>,
    dist: Vec<f64>,
}

impl DoorMatrix {
    fn index(&self, d: DoorId) -> Option<usize> {
        self.doors.binary_search(&d).ok()
    }

    pub fn get(&self, a: DoorId, b: DoorId) -> Option<f64> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Some(self.dist[i * self.doors.len() + j])
    }

    pub fn doors(&self) -> &[DoorId] {
        &self.doors
    }
}

/// Uniform bucket grid over one floor for point location.
#[derive(Debug, Clone)]
struct FloorIndex {
    bounds: Rect,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<usize>>,
}

impl FloorIndex {
    fn build(bounds: Rect, partitions: &[(usize, Rect)]) -> Self {
        let span = bounds.width().max(bounds.height()).max(1.0);
        let cell = (span / 64.0).max(1.0);
        let nx = ((bounds.width() / cell).ceil() as usize).max(1);
        let ny = ((bounds.height() / cell).ceil() as usize).max(1);
        let mut buckets = vec![Vec::new(); nx * ny];
        for &(idx, bb) in partitions {
            let (x0, y0) = Self::cell_of(&bounds, cell, nx, ny, bb.min_x - GEOM_EPS, bb.min_y - GEOM_EPS);
            let (x1, y1) = Self::cell_of(&bounds, cell, nx, ny, bb.max_x + GEOM_EPS, bb.max_y + GEOM_EPS);
            for cy in y0..=y1 {
                for cx in x0..=x1 {
                    buckets[cy * nx + cx].push(idx);
                }
            }
        }
        FloorIndex {
            bounds,
            cell,
            nx,
            ny,
            buckets,
        }
    }

    fn cell_of(bounds: &Rect, cell: f64, nx: usize, ny: usize, x: f64, y: f64) -> (usize, usize) {
        let cx = ((x - bounds.min_x) / cell).floor().clamp(0.0, (nx - 1) as f64) as usize;
        let cy = ((y - bounds.min_y) / cell).floor().clamp(0.0, (ny - 1) as f64) as usize;
        (cx, cy)
    }

    fn candidates(&self, x: f64, y: f64) -> &[usize] {
        if !self.bounds.contains(x, y, GEOM_EPS) {
            return &[];
        }
        let (cx, cy) = Self::cell_of(&self.bounds, self.cell, self.nx, self.ny, x, y);
        &self.buckets[cy * self.nx + cx]
    }
}

/// Indoor topology: partitions, doors, directed door edges and door-to-door distances.
///
/// Immutable once built; every lookup takes `&self`.
#[derive(Debug, Clone)]
pub struct IndoorGraph {
    floors: Vec<Floor>,
    partitions: Vec<Partition>,
    partition_index: HashMap<PartitionId, usize>,
    doors: Vec<Door>,
    door_index: HashMap<DoorId, usize>,
    edges: BTreeSet<Edge>,
    leavable: HashMap<PartitionId, Vec<DoorId>>,
    enterable: HashMap<DoorId, Vec<PartitionId>>,
    d2d: HashMap<PartitionId, DoorMatrix>,
    host_index: HashMap<i32, FloorIndex>,
}

/// Staircase declaration used while building a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaircaseSpec {
    pub partition: PartitionId,
    pub upper_floor: i32,
    pub length: f64,
}

/// Raw partition declaration used while building a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSpec {
    pub id: PartitionId,
    pub floor: i32,
    pub polygon: Vec<[f64; 2]>,
}

/// Raw door declaration used while building a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DoorSpec {
    pub id: DoorId,
    pub location: Location,
    pub links: Vec<(PartitionId, PartitionId)>,
}

/// Which declaration a validation error refers to, by position in its list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entity {
    Floor(usize),
    Partition(usize),
    Door(usize),
    Staircase(usize),
}

impl IndoorGraph {
    /// Validates the declarations and builds the graph.
    pub fn build(
        floors: Vec<Floor>,
        partitions: Vec<PartitionSpec>,
        doors: Vec<DoorSpec>,
        staircases: Vec<StaircaseSpec>,
    ) -> Result<Self, ModelError> {
        Self::build_located(floors, partitions, doors, staircases).map_err(|(_, e)| e)
    }

    /// Like [`IndoorGraph::build`], but also reports which declaration failed.
    pub fn build_located(
        floors: Vec<Floor>,
        partitions: Vec<PartitionSpec>,
        doors: Vec<DoorSpec>,
        staircases: Vec<StaircaseSpec>,
    ) -> Result<Self, (Option<Entity>, ModelError)> {
        let mut floor_set: HashMap<i32, Rect> = HashMap::new();
        for (i, f) in floors.iter().enumerate() {
            if f.bounds.min_x > f.bounds.max_x || f.bounds.min_y > f.bounds.max_y {
                return Err((Some(Entity::Floor(i)), ModelError::BadFloorBounds(f.level)));
            }
            if floor_set.insert(f.level, f.bounds).is_some() {
                return Err((Some(Entity::Floor(i)), ModelError::DuplicateFloor(f.level)));
            }
        }

        let mut parts: Vec<(usize, Partition)> = Vec::with_capacity(partitions.len());
        let mut partition_index = HashMap::new();
        for (i, p) in partitions.into_iter().enumerate() {
            let at = Some(Entity::Partition(i));
            let bounds = *floor_set.get(&p.floor).ok_or((at, ModelError::UnknownFloor(p.floor)))?;
            if !geometry::is_simple_polygon(&p.polygon) || geometry::polygon_area(&p.polygon) <= 0.0 {
                return Err((at, ModelError::BadPolygon(p.id)));
            }
            if p.polygon.iter().any(|v| !bounds.contains(v[0], v[1], GEOM_EPS)) {
                return Err((at, ModelError::OutsideFloor(p.id, p.floor)));
            }
            if partition_index.insert(p.id, 0).is_some() {
                return Err((at, ModelError::DuplicatePartition(p.id)));
            }
            let bbox = Rect::around(&p.polygon);
            parts.push((
                i,
                Partition {
                    id: p.id,
                    floor: p.floor,
                    polygon: p.polygon,
                    bbox,
                    door_ids: Vec::new(),
                    staircase: None,
                },
            ));
        }
        parts.sort_by_key(|(_, p)| p.id);
        let mut partitions: Vec<Partition> = parts.into_iter().map(|(_, p)| p).collect();
        for (idx, p) in partitions.iter().enumerate() {
            partition_index.insert(p.id, idx);
        }

        for (i, s) in staircases.iter().enumerate() {
            let at = Some(Entity::Staircase(i));
            let idx = *partition_index
                .get(&s.partition)
                .ok_or((at, ModelError::UnknownPartition(s.partition)))?;
            let p = &mut partitions[idx];
            if !floor_set.contains_key(&s.upper_floor) {
                return Err((at, ModelError::UnknownFloor(s.upper_floor)));
            }
            if s.upper_floor == p.floor {
                return Err((at, ModelError::BadStaircase(s.partition, "upper floor equals base floor".into())));
            }
            if !(s.length >= 0.0 && s.length.is_finite()) {
                return Err((at, ModelError::BadStaircase(s.partition, "length must be finite and non-negative".into())));
            }
            if p.staircase.is_some() {
                return Err((at, ModelError::BadStaircase(s.partition, "declared twice".into())));
            }
            p.staircase = Some(Staircase {
                upper_floor: s.upper_floor,
                length: s.length,
            });
        }

        let mut door_list: Vec<Door> = Vec::with_capacity(doors.len());
        let mut door_index = HashMap::new();
        let mut edges = BTreeSet::new();
        for (i, d) in doors.into_iter().enumerate() {
            let at = Some(Entity::Door(i));
            let bounds = *floor_set
                .get(&d.location.floor)
                .ok_or((at, ModelError::UnknownFloor(d.location.floor)))?;
            if !bounds.contains(d.location.x, d.location.y, GEOM_EPS) {
                return Err((at, ModelError::Unlocatable {
                    x: d.location.x,
                    y: d.location.y,
                    floor: d.location.floor,
                }));
            }
            if d.links.is_empty() {
                return Err((at, ModelError::DoorWithoutLinks(d.id)));
            }
            if door_index.insert(d.id, door_list.len()).is_some() {
                return Err((at, ModelError::DuplicateDoor(d.id)));
            }
            let mut touched = BTreeSet::new();
            for &(from, to) in &d.links {
                if from == to {
                    return Err((at, ModelError::SelfLink(d.id, from)));
                }
                touched.insert(from);
                touched.insert(to);
            }
            if touched.len() > 2 {
                return Err((at, ModelError::TooManyPartitions(d.id)));
            }
            for &pid in &touched {
                let idx = *partition_index.get(&pid).ok_or((at, ModelError::UnknownPartition(pid)))?;
                let p = &mut partitions[idx];
                let on_wall = geometry::on_boundary(&p.polygon, d.location.x, d.location.y, GEOM_EPS);
                if !on_wall || !p.admits_floor(d.location.floor) {
                    return Err((at, ModelError::DoorOffBoundary {
                        door: d.id,
                        partition: pid,
                        x: d.location.x,
                        y: d.location.y,
                        floor: d.location.floor,
                    }));
                }
                p.door_ids.push(d.id);
            }
            for &(from, to) in &d.links {
                edges.insert(Edge { from, to, door: d.id });
            }
            door_list.push(d.into_door());
        }
        for p in &mut partitions {
            p.door_ids.sort();
            p.door_ids.dedup();
        }

        let mut leavable: HashMap<PartitionId, Vec<DoorId>> = HashMap::new();
        let mut enterable: HashMap<DoorId, Vec<PartitionId>> = HashMap::new();
        for e in &edges {
            leavable.entry(e.from).or_default().push(e.door);
            enterable.entry(e.door).or_default().push(e.to);
        }
        for v in leavable.values_mut() {
            v.sort();
            v.dedup();
        }
        for v in enterable.values_mut() {
            v.sort();
            v.dedup();
        }

        let mut graph = IndoorGraph {
            floors,
            partitions,
            partition_index,
            doors: door_list,
            door_index,
            edges,
            leavable,
            enterable,
            d2d: HashMap::new(),
            host_index: HashMap::new(),
        };

        let mut d2d = HashMap::new();
        for p in &graph.partitions {
            let n = p.door_ids.len();
            let mut dist = vec![0.0; n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let a = graph.doors[graph.door_index[&p.door_ids[i]]].location;
                    let b = graph.doors[graph.door_index[&p.door_ids[j]]].location;
                    let d = graph.intra_distance_in(p, &a, &b);
                    dist[i * n + j] = d;
                    dist[j * n + i] = d;
                }
            }
            d2d.insert(p.id, DoorMatrix {
                doors: p.door_ids.clone(),
                dist,
            });
        }
        graph.d2d = d2d;

        let mut per_floor: HashMap<i32, Vec<(usize, Rect)>> = HashMap::new();
        for (idx, p) in graph.partitions.iter().enumerate() {
            per_floor.entry(p.floor).or_default().push((idx, p.bbox));
        }
        for f in &graph.floors {
            let items = per_floor.remove(&f.level).unwrap_or_default();
            graph.host_index.insert(f.level, FloorIndex::build(f.bounds, &items));
        }
        Ok(graph)
    }

    pub fn floors(&self) -> &[Floor] {
        &self.floors
    }

    /// Partitions in ascending id order.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn doors(&self) -> &[Door] {
        &self.doors
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn partition(&self, id: PartitionId) -> Result<&Partition, ModelError> {
        self.partition_index
            .get(&id)
            .map(|&i| &self.partitions[i])
            .ok_or(ModelError::UnknownPartition(id))
    }

    pub fn door(&self, id: DoorId) -> Result<&Door, ModelError> {
        self.door_index
            .get(&id)
            .map(|&i| &self.doors[i])
            .ok_or(ModelError::UnknownDoor(id))
    }

    /// The partition containing `l`. Boundary points go to the smallest containing id.
    pub fn host(&self, l: &Location) -> Result<PartitionId, ModelError> {
        let unlocatable = || ModelError::Unlocatable {
            x: l.x,
            y: l.y,
            floor: l.floor,
        };
        let index = self.host_index.get(&l.floor).ok_or_else(unlocatable)?;
        index
            .candidates(l.x, l.y)
            .iter()
            .map(|&i| &self.partitions[i])
            .filter(|p| p.contains(l))
            .map(|p| p.id)
            .min()
            .ok_or_else(unlocatable)
    }

    /// Euclidean distance between two points of the same partition; a staircase adds its
    /// traversal length when the points are on different floors.
    pub fn intra_distance(&self, partition: PartitionId, a: &Location, b: &Location) -> f64 {
        match self.partition(partition) {
            Ok(p) => self.intra_distance_in(p, a, b),
            Err(_) => a.planar_distance(b),
        }
    }

    fn intra_distance_in(&self, p: &Partition, a: &Location, b: &Location) -> f64 {
        let planar = a.planar_distance(b);
        match p.staircase {
            Some(s) if a.floor != b.floor => planar + s.length,
            _ => planar,
        }
    }

    /// Contact distance: Euclidean within a shared host partition, infinite otherwise.
    pub fn contact_distance(&self, a: &Location, b: &Location) -> Result<f64, ModelError> {
        let (ha, hb) = (self.host(a)?, self.host(b)?);
        Ok(if ha == hb {
            self.intra_distance(ha, a, b)
        } else {
            f64::INFINITY
        })
    }

    pub fn door_to_door(&self, v: PartitionId, a: DoorId, b: DoorId) -> Result<f64, ModelError> {
        let m = self.d2d.get(&v).ok_or(ModelError::UnknownPartition(v))?;
        for d in [a, b] {
            if m.index(d).is_none() {
                self.door(d)?;
                return Err(ModelError::DoorNotOnPartition { door: d, partition: v });
            }
        }
        Ok(m.get(a, b).expect("both doors indexed"))
    }

    pub fn door_matrix(&self, v: PartitionId) -> Result<&DoorMatrix, ModelError> {
        self.d2d.get(&v).ok_or(ModelError::UnknownPartition(v))
    }

    /// Doors through which one can leave `v`.
    pub fn leavable_doors(&self, v: PartitionId) -> Result<&[DoorId], ModelError> {
        self.partition(v)?;
        Ok(self.leavable.get(&v).map(Vec::as_slice).unwrap_or(&[]))
    }

    /// Partitions one can enter through `d`.
    pub fn enterable_partitions(&self, d: DoorId) -> Result<&[PartitionId], ModelError> {
        self.door(d)?;
        Ok(self.enterable.get(&d).map(Vec::as_slice).unwrap_or(&[]))
    }

    /// Largest intra-partition distance from `center` to a vertex of `v`.
    pub fn max_vertex_distance(&self, v: PartitionId, center: &Location) -> Result<f64, ModelError> {
        let p = self.partition(v)?;
        Ok(p.polygon
            .iter()
            .map(|c| self.intra_distance_in(p, center, &Location::new(c[0], c[1], p.floor)))
            .fold(0.0, f64::max))
    }

    /// Largest distance from door `d`'s midpoint to any vertex of `v`.
    pub fn max_door_distance(&self, v: PartitionId, d: DoorId) -> Result<f64, ModelError> {
        let p = self.partition(v)?;
        if p.door_ids.binary_search(&d).is_err() {
            self.door(d)?;
            return Err(ModelError::DoorNotOnPartition { door: d, partition: v });
        }
        let loc = self.door(d)?.location;
        self.max_vertex_distance(v, &loc)
    }
}

impl DoorSpec {
    fn into_door(self) -> Door {
        Door {
            id: self.id,
            location: self.location,
            links: self.links,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<[f64; 2]> {
        vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]]
    }

    fn both(a: u32, b: u32) -> Vec<(PartitionId, PartitionId)> {
        vec![(PartitionId(a), PartitionId(b)), (PartitionId(b), PartitionId(a))]
    }

    /// v1 = [0,10]x[0,10], v2 = [10,20]x[0,10], v3 = [0,10]x[10,20]; v1-v2 via d1, v1-v3 via d2.
    fn three_rooms() -> IndoorGraph {
        let floors = vec![Floor {
            level: 0,
            bounds: Rect {
                min_x: 0.0,
                min_y: 0.0,
                max_x: 20.0,
                max_y: 20.0,
            },
        }];
        let partitions = vec![
            PartitionSpec { id: PartitionId(1), floor: 0, polygon: rect(0.0, 0.0, 10.0, 10.0) },
            PartitionSpec { id: PartitionId(2), floor: 0, polygon: rect(10.0, 0.0, 20.0, 10.0) },
            PartitionSpec { id: PartitionId(3), floor: 0, polygon: rect(0.0, 10.0, 10.0, 20.0) },
            PartitionSpec { id: PartitionId(4), floor: 0, polygon: rect(10.0, 10.0, 20.0, 20.0) },
        ];
        let doors = vec![
            DoorSpec { id: DoorId(1), location: Location::new(10.0, 5.0, 0), links: both(1, 2) },
            DoorSpec { id: DoorId(2), location: Location::new(5.0, 10.0, 0), links: both(1, 3) },
        ];
        IndoorGraph::build(floors, partitions, doors, vec![]).unwrap()
    }

    #[test]
    fn host_centroid_and_shared_wall() {
        let g = three_rooms();
        for p in g.partitions() {
            assert_eq!(g.host(&p.centroid()).unwrap(), p.id);
        }
        // shared wall of v1/v2 goes to the smaller id
        assert_eq!(g.host(&Location::new(10.0, 2.0, 0)).unwrap(), PartitionId(1));
        assert_eq!(g.host(&Location::new(10.0, 15.0, 0)).unwrap(), PartitionId(3));
        assert!(matches!(g.host(&Location::new(25.0, 5.0, 0)), Err(ModelError::Unlocatable { .. })));
        assert!(matches!(g.host(&Location::new(5.0, 5.0, 3)), Err(ModelError::Unlocatable { .. })));
    }

    #[test]
    fn contact_distance_cases() {
        let g = three_rooms();
        let a = Location::new(2.0, 2.0, 0);
        let b = Location::new(2.0, 3.9, 0);
        assert!((g.contact_distance(&a, &b).unwrap() - 1.9).abs() < 1e-12);
        assert_eq!(g.contact_distance(&a, &a).unwrap(), 0.0);
        let c = Location::new(12.0, 2.0, 0);
        assert_eq!(g.contact_distance(&a, &c).unwrap(), f64::INFINITY);
    }

    #[test]
    fn views_over_edges() {
        let g = three_rooms();
        assert_eq!(g.enterable_partitions(DoorId(2)).unwrap(), &[PartitionId(1), PartitionId(3)]);
        assert_eq!(g.leavable_doors(PartitionId(1)).unwrap(), &[DoorId(1), DoorId(2)]);
        assert!(g.leavable_doors(PartitionId(4)).unwrap().is_empty());
        assert!(matches!(g.enterable_partitions(DoorId(9)), Err(ModelError::UnknownDoor(_))));
        assert!(matches!(g.leavable_doors(PartitionId(9)), Err(ModelError::UnknownPartition(_))));
    }

    #[test]
    fn door_to_door_opposite_walls() {
        let floors = vec![Floor {
            level: 0,
            bounds: Rect { min_x: 0.0, min_y: 0.0, max_x: 30.0, max_y: 10.0 },
        }];
        let partitions = vec![
            PartitionSpec { id: PartitionId(1), floor: 0, polygon: rect(0.0, 0.0, 10.0, 10.0) },
            PartitionSpec { id: PartitionId(2), floor: 0, polygon: rect(10.0, 0.0, 20.0, 10.0) },
            PartitionSpec { id: PartitionId(3), floor: 0, polygon: rect(20.0, 0.0, 30.0, 10.0) },
        ];
        let doors = vec![
            DoorSpec { id: DoorId(1), location: Location::new(10.0, 5.0, 0), links: both(1, 2) },
            DoorSpec { id: DoorId(2), location: Location::new(20.0, 5.0, 0), links: both(2, 3) },
        ];
        let g = IndoorGraph::build(floors, partitions, doors, vec![]).unwrap();
        assert_eq!(g.door_to_door(PartitionId(2), DoorId(1), DoorId(2)).unwrap(), 10.0);
        assert_eq!(g.door_to_door(PartitionId(2), DoorId(1), DoorId(1)).unwrap(), 0.0);
        assert!(matches!(
            g.door_to_door(PartitionId(1), DoorId(1), DoorId(2)),
            Err(ModelError::DoorNotOnPartition { .. })
        ));
    }

    #[test]
    fn max_door_distance_square() {
        let g = three_rooms();
        // d2 at (5, 10): midpoint of v1's top wall
        let m = g.max_door_distance(PartitionId(1), DoorId(2)).unwrap();
        assert!((m - (25.0f64 + 100.0).sqrt()).abs() < 1e-12);
        assert!(matches!(
            g.max_door_distance(PartitionId(2), DoorId(2)),
            Err(ModelError::DoorNotOnPartition { .. })
        ));
    }

    #[test]
    fn rejects_malformed_declarations() {
        let floors = || {
            vec![Floor {
                level: 0,
                bounds: Rect { min_x: 0.0, min_y: 0.0, max_x: 20.0, max_y: 20.0 },
            }]
        };
        let room = |id| PartitionSpec { id: PartitionId(id), floor: 0, polygon: rect(0.0, 0.0, 10.0, 10.0) };
        let dup = IndoorGraph::build(floors(), vec![room(1), room(1)], vec![], vec![]);
        assert!(matches!(dup, Err(ModelError::DuplicatePartition(_))));

        let bow = PartitionSpec {
            id: PartitionId(1),
            floor: 0,
            polygon: vec![[0.0, 0.0], [2.0, 2.0], [2.0, 0.0], [0.0, 2.0]],
        };
        assert!(matches!(IndoorGraph::build(floors(), vec![bow], vec![], vec![]), Err(ModelError::BadPolygon(_))));

        let off = DoorSpec { id: DoorId(1), location: Location::new(5.0, 5.0, 0), links: both(1, 2) };
        let two = PartitionSpec { id: PartitionId(2), floor: 0, polygon: rect(10.0, 0.0, 20.0, 10.0) };
        let r = IndoorGraph::build(floors(), vec![room(1), two.clone()], vec![off], vec![]);
        assert!(matches!(r, Err(ModelError::DoorOffBoundary { .. })));

        let dangling = DoorSpec { id: DoorId(1), location: Location::new(10.0, 5.0, 0), links: both(1, 7) };
        let r = IndoorGraph::build(floors(), vec![room(1), two], vec![dangling], vec![]);
        assert!(matches!(r, Err(ModelError::UnknownPartition(PartitionId(7)))));
    }

    #[test]
    fn staircase_adds_length_across_floors() {
        let bounds = Rect { min_x: 0.0, min_y: 0.0, max_x: 10.0, max_y: 10.0 };
        let floors = vec![Floor { level: 0, bounds }, Floor { level: 1, bounds }];
        let partitions = vec![
            PartitionSpec { id: PartitionId(1), floor: 0, polygon: rect(0.0, 0.0, 5.0, 10.0) },
            PartitionSpec { id: PartitionId(2), floor: 0, polygon: rect(5.0, 0.0, 10.0, 10.0) },
            PartitionSpec { id: PartitionId(3), floor: 1, polygon: rect(0.0, 0.0, 5.0, 10.0) },
        ];
        let doors = vec![
            DoorSpec { id: DoorId(1), location: Location::new(5.0, 2.0, 0), links: both(1, 2) },
            DoorSpec { id: DoorId(2), location: Location::new(5.0, 8.0, 1), links: both(2, 3) },
        ];
        let stairs = vec![StaircaseSpec { partition: PartitionId(2), upper_floor: 1, length: 20.0 }];
        let g = IndoorGraph::build(floors, partitions, doors, stairs).unwrap();
        assert_eq!(g.door_to_door(PartitionId(2), DoorId(1), DoorId(2)).unwrap(), 26.0);
        assert_eq!(g.host(&Location::new(7.0, 5.0, 0)).unwrap(), PartitionId(2));
        assert!(g.host(&Location::new(7.0, 5.0, 1)).is_err());
    }
}
