use crate::geometry::{Location, Rect};
use crate::ids::{DoorId, PartitionId};
use crate::indoor::{DoorSpec, Floor, IndoorGraph, PartitionSpec};

pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<[f64; 2]> {
    vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]]
}

pub fn both(a: u32, b: u32) -> Vec<(PartitionId, PartitionId)> {
    vec![(PartitionId(a), PartitionId(b)), (PartitionId(b), PartitionId(a))]
}

/// v1 = [0,10]x[0,10], v2 = [10,20]x[0,10], v3 = [0,10]x[10,20], v4 = [10,20]x[10,20] (isolated).
/// d1 at (10, 5) joins v1-v2, d2 at (5, 10) joins v1-v3.
pub fn three_rooms() -> IndoorGraph {
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
