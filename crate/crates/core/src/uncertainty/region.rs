use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};

use crate::geometry::Location;
use crate::ids::{DoorId, PartitionId};
use crate::indoor::{IndoorGraph, ModelError};

/// Where a portion is centered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PortionCenter {
    Seed(Location),
    Door(DoorId),
}

/// Part of an uncertainty region inside one partition: points within `radius` of `location`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Portion {
    pub center: PortionCenter,
    /// The seed location or the door midpoint.
    pub location: Location,
    pub radius: f64,
}

/// Indoor uncertainty region: portions keyed by partition.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UncertaintyRegion {
    portions: BTreeMap<PartitionId, Vec<Portion>>,
}

impl UncertaintyRegion {
    /// Partitions with at least one portion, ascending.
    pub fn partitions(&self) -> impl Iterator<Item = PartitionId> + '_ {
        self.portions.keys().copied()
    }

    pub fn portions(&self, v: PartitionId) -> &[Portion] {
        self.portions.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains_partition(&self, v: PartitionId) -> bool {
        self.portions.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.portions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.portions.is_empty()
    }

    /// Whether `l` lies within some portion of its host partition.
    pub fn contains(&self, graph: &IndoorGraph, l: &Location) -> Result<bool, ModelError> {
        let v = graph.host(l)?;
        Ok(self
            .portions(v)
            .iter()
            .any(|p| graph.intra_distance(v, &p.location, l) <= p.radius))
    }

    fn add(&mut self, v: PartitionId, p: Portion) {
        self.portions.entry(v).or_default().push(p);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
struct HeapKey(f64);

impl Eq for HeapKey {}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Portions of indoor space within indoor distance `dist` of `l`.
///
/// The host partition gets `(l, dist)`. Doors are then expanded Dijkstra-style from the
/// host's leavable doors; a partition entered through door `d` at distance `dist[d]` gets the
/// portion `(d, dist - dist[d])`. Expansion stops at the first door farther than `dist`.
pub fn find_iur(graph: &IndoorGraph, l: &Location, dist: f64) -> Result<UncertaintyRegion, ModelError> {
    let dist = dist.max(0.0);
    let host = graph.host(l)?;
    let mut region = UncertaintyRegion::default();
    region.add(
        host,
        Portion {
            center: PortionCenter::Seed(*l),
            location: *l,
            radius: dist,
        },
    );

    let mut best: HashMap<DoorId, f64> = HashMap::new();
    let mut prev: HashMap<DoorId, PartitionId> = HashMap::new();
    let mut visited: HashSet<DoorId> = HashSet::new();
    let mut heap = BinaryHeap::new();
    for &d in graph.leavable_doors(host)? {
        let dd = graph.intra_distance(host, l, &graph.door(d)?.location);
        best.insert(d, dd);
        prev.insert(d, host);
        heap.push(Reverse((HeapKey(dd), d)));
    }

    while let Some(Reverse((HeapKey(dd), d))) = heap.pop() {
        if visited.contains(&d) || dd > best[&d] {
            continue;
        }
        if dd > dist {
            break;
        }
        let from = prev[&d];
        let location = graph.door(d)?.location;
        for &vi in graph.enterable_partitions(d)? {
            if vi == from {
                continue;
            }
            region.add(
                vi,
                Portion {
                    center: PortionCenter::Door(d),
                    location,
                    radius: dist - dd,
                },
            );
            visited.insert(d);
            for &dj in graph.leavable_doors(vi)? {
                if visited.contains(&dj) {
                    continue;
                }
                let cand = dd + graph.door_to_door(vi, d, dj)?;
                if cand < best.get(&dj).copied().unwrap_or(f64::INFINITY) {
                    best.insert(dj, cand);
                    prev.insert(dj, vi);
                    heap.push(Reverse((HeapKey(cand), dj)));
                }
            }
        }
    }
    Ok(region)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::three_rooms;

    #[test]
    fn zero_budget_is_seed_only() {
        let g = three_rooms();
        let l = Location::new(3.0, 3.0, 0);
        let r = find_iur(&g, &l, 0.0).unwrap();
        assert_eq!(r.partitions().collect::<Vec<_>>(), vec![PartitionId(1)]);
        assert_eq!(r.portions(PartitionId(1)), &[Portion {
            center: PortionCenter::Seed(l),
            location: l,
            radius: 0.0
        }]);
    }

    #[test]
    fn expands_through_near_door_only() {
        // seed 1 m from d2 (into v3), 5 m+ from d1 (into v2)
        let g = three_rooms();
        let l = Location::new(5.0, 9.0, 0);
        let r = find_iur(&g, &l, 3.0).unwrap();
        assert_eq!(r.partitions().collect::<Vec<_>>(), vec![PartitionId(1), PartitionId(3)]);
        let p = r.portions(PartitionId(3))[0];
        assert_eq!(p.center, PortionCenter::Door(DoorId(2)));
        assert!((p.radius - 2.0).abs() < 1e-12);
        assert!(!r.contains_partition(PartitionId(2)));
        assert!(r.contains(&g, &Location::new(5.0, 11.5, 0)).unwrap());
        assert!(!r.contains(&g, &Location::new(5.0, 12.5, 0)).unwrap());

        let big = find_iur(&g, &l, 40.0).unwrap();
        assert_eq!(big.len(), 3);
        assert!(!big.contains_partition(PartitionId(4)));
    }

    #[test]
    fn unlocatable_seed() {
        let g = three_rooms();
        assert!(find_iur(&g, &Location::new(-1.0, 0.0, 0), 1.0).is_err());
    }
}
