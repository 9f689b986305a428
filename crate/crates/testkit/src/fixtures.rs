use std::collections::HashMap;

use icq_core::indoor::{DoorSpec, Floor, PartitionSpec, StaircaseSpec};
use icq_core::trajectory::SampleKind;
use icq_core::{DoorId, GridTime, IndoorGraph, Location, ObjectId, PartitionId, Rect, SampleSet};

pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<[f64; 2]> {
    vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]]
}

pub fn both(a: u32, b: u32) -> Vec<(PartitionId, PartitionId)> {
    vec![(PartitionId(a), PartitionId(b)), (PartitionId(b), PartitionId(a))]
}

fn floor(level: i32, max_x: f64, max_y: f64) -> Floor {
    Floor {
        level,
        bounds: Rect {
            min_x: 0.0,
            min_y: 0.0,
            max_x,
            max_y,
        },
    }
}

/// v1 = [0,10]², v2 = [10,20]×[0,10], v3 = [0,10]×[10,20], v4 = [10,20]² without doors.
/// d1 at (10, 5) joins v1 and v2, d2 at (5, 10) joins v1 and v3.
pub fn three_rooms() -> IndoorGraph {
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
    IndoorGraph::build(vec![floor(0, 20.0, 20.0)], partitions, doors, vec![]).expect("valid fixture")
}

/// `cols × rows` square rooms of side `size` on two floors, joined by a staircase in the
/// first room of the ground floor. Neighbouring rooms share a door in the middle of their
/// wall; every third door is one-way (west to east, or south to north).
pub fn room_grid(cols: u32, rows: u32, size: f64) -> IndoorGraph {
    let mut partitions = Vec::new();
    let mut doors = Vec::new();
    let id = |f: u32, c: u32, r: u32| PartitionId(1 + f * cols * rows + r * cols + c);
    for f in 0..2 {
        for r in 0..rows {
            for c in 0..cols {
                let (x0, y0) = (f64::from(c) * size, f64::from(r) * size);
                partitions.push(PartitionSpec {
                    id: id(f, c, r),
                    floor: f as i32,
                    polygon: rect(x0, y0, x0 + size, y0 + size),
                });
                let mut add = |other: PartitionId, x: f64, y: f64| {
                    let n = doors.len() as u32 + 1;
                    let me = id(f, c, r);
                    let links = if n % 3 == 0 { vec![(other, me)] } else { vec![(other, me), (me, other)] };
                    doors.push(DoorSpec { id: DoorId(n), location: Location::new(x, y, f as i32), links });
                };
                if c > 0 {
                    add(id(f, c - 1, r), x0, y0 + size / 2.0);
                }
                if r > 0 {
                    add(id(f, c, r - 1), x0 + size / 2.0, y0);
                }
            }
        }
    }
    // The staircase occupies the ground-floor room at column 0, row 0 and leads up into
    // the room above it through a door on its west wall.
    let stair = id(0, 0, 0);
    let n = doors.len() as u32 + 1;
    doors.push(DoorSpec {
        id: DoorId(n),
        location: Location::new(0.0, size / 2.0, 1),
        links: vec![(stair, id(1, 0, 0)), (id(1, 0, 0), stair)],
    });
    let (w, h) = (f64::from(cols) * size, f64::from(rows) * size);
    IndoorGraph::build(
        vec![floor(0, w, h), floor(1, w, h)],
        partitions,
        doors,
        vec![StaircaseSpec { partition: stair, upper_floor: 1, length: 20.0 }],
    )
    .expect("valid fixture")
}

/// The four-object scenario over sampling times 1..=4 on [`three_rooms`].
///
/// o2 is the query object. o1 stays within 2 m of o2's likely location throughout; o3 is
/// close at times 1 and 3 only (contact probabilities 1, 0.44, 1, 0.3); o4 stays in v2.
pub struct WorkedExample {
    pub graph: IndoorGraph,
    pub sets: HashMap<(ObjectId, GridTime), SampleSet>,
}

pub fn worked_example() -> WorkedExample {
    let graph = three_rooms();
    let l = |x: f64, y: f64| Location::new(x, y, 0);
    let set = |kind: SampleKind, items: &[(Location, f64)]| SampleSet::located(&graph, kind, items).expect("valid samples");
    let original = |x: f64, y: f64| set(SampleKind::Original, &[(l(x, y), 1.0)]);
    let derived = |items: &[(Location, f64)]| set(SampleKind::Derived, items);
    let (o1, o2, o3, o4) = (ObjectId(1), ObjectId(2), ObjectId(3), ObjectId(4));
    let w = GridTime;
    let mut sets = HashMap::new();
    sets.insert((o2, w(1)), original(5.0, 8.0));
    sets.insert((o3, w(1)), original(5.0, 6.1));
    sets.insert((o1, w(1)), original(6.0, 8.0));

    sets.insert((o2, w(2)), derived(&[(l(5.0, 8.0), 0.2), (l(5.0, 12.0), 0.8)]));
    sets.insert((o3, w(2)), derived(&[(l(5.5, 8.5), 0.6), (l(5.5, 12.5), 0.4)]));
    sets.insert((o1, w(2)), derived(&[(l(5.0, 12.5), 1.0)]));

    sets.insert((o2, w(3)), original(5.0, 12.0));
    sets.insert((o3, w(3)), original(5.5, 12.5));
    sets.insert((o1, w(3)), original(5.0, 13.0));

    sets.insert((o2, w(4)), derived(&[(l(5.0, 8.0), 0.3), (l(5.0, 12.5), 0.7)]));
    sets.insert((o3, w(4)), original(5.0, 7.0));
    sets.insert((o1, w(4)), original(5.0, 13.0));

    for t in 1..=4 {
        sets.insert((o4, w(t)), original(15.0, 5.0));
    }
    WorkedExample { graph, sets }
}
