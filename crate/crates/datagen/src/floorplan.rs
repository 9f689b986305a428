use icq_core::geometry::{Location, Rect};
use icq_core::ids::{DoorId, PartitionId};
use icq_core::indoor::{DoorSpec, Floor, IndoorGraph, PartitionSpec, StaircaseSpec};

use crate::config::SimConfig;

const STAIR_RUN: f64 = 4.0;

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<[f64; 2]> {
    vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]]
}

struct Builder {
    partitions: Vec<PartitionSpec>,
    doors: Vec<DoorSpec>,
}

impl Builder {
    fn partition(&mut self, floor: i32, polygon: Vec<[f64; 2]>) -> PartitionId {
        let id = PartitionId(self.partitions.len() as u32 + 1);
        self.partitions.push(PartitionSpec { id, floor, polygon });
        id
    }

    fn door(&mut self, x: f64, y: f64, floor: i32, a: PartitionId, b: PartitionId) {
        let id = DoorId(self.doors.len() as u32 + 1);
        self.doors.push(DoorSpec {
            id,
            location: Location::new(x, y, floor),
            links: vec![(a, b), (b, a)],
        });
    }
}

/// One corridor and the room bands on either side of it.
struct CorridorBand {
    y0: f64,
    y1: f64,
    /// Segment partitions, west to east, with their x ranges.
    segments: Vec<(PartitionId, f64, f64)>,
}

impl CorridorBand {
    fn segment_at(&self, x: f64) -> PartitionId {
        self.segments
            .iter()
            .find(|(_, x0, x1)| *x0 <= x && x <= *x1)
            .map(|s| s.0)
            .expect("x inside the corridor")
    }

    fn mid_y(&self) -> f64 {
        (self.y0 + self.y1) / 2.0
    }
}

/// Width and height of one floor's footprint, staircases excluded.
pub fn floor_extent(cfg: &SimConfig) -> (f64, f64) {
    let w = f64::from(cfg.rooms_per_row) * cfg.room_width;
    let h = f64::from(cfg.room_rows) * cfg.room_depth + f64::from(cfg.corridors()) * cfg.corridor_width;
    let spine = if cfg.corridors() > 1 { cfg.corridor_width } else { 0.0 };
    (w + spine, h)
}

/// Builds the floorplan described by `cfg`: rooms along corridors cut into segments,
/// a spine corridor joining the corridors of a floor, and one staircase per pair of
/// consecutive floors. Every door is two-way. `cfg` must be valid.
pub fn generate_floorplan(cfg: &SimConfig) -> IndoorGraph {
    let (rw, rd, cw) = (cfg.room_width, cfg.room_depth, cfg.corridor_width);
    let cols = cfg.rooms_per_row;
    let w = f64::from(cols) * rw;
    let (extent_w, h) = floor_extent(cfg);
    let corridors = cfg.corridors();
    let mut b = Builder {
        partitions: Vec::new(),
        doors: Vec::new(),
    };
    let mut floors = Vec::new();
    let mut bands_per_floor: Vec<Vec<CorridorBand>> = Vec::new();

    for f in 0..cfg.floors as i32 {
        floors.push(Floor {
            level: f,
            bounds: Rect {
                min_x: -STAIR_RUN,
                min_y: 0.0,
                max_x: extent_w.max(w) + STAIR_RUN,
                max_y: h,
            },
        });
        let mut bands = Vec::new();
        let mut y = 0.0;
        let mut row = 0;
        for _ in 0..corridors {
            let lower = y;
            let c0 = lower + rd;
            let c1 = c0 + cw;
            let mut segments = Vec::new();
            for s in 0..cfg.corridor_segments {
                let x0 = f64::from(s * cols / cfg.corridor_segments) * rw;
                let x1 = f64::from((s + 1) * cols / cfg.corridor_segments) * rw;
                segments.push((b.partition(f, rect(x0, c0, x1, c1)), x0, x1));
            }
            for pair in segments.windows(2) {
                b.door(pair[0].2, (c0 + c1) / 2.0, f, pair[0].0, pair[1].0);
            }
            let band = CorridorBand { y0: c0, y1: c1, segments };
            // Rooms below the corridor, then above it if this band exists.
            let mut sides = vec![(lower, c0, c0)];
            row += 1;
            if row < cfg.room_rows {
                sides.push((c1, c1 + rd, c1));
                row += 1;
            }
            for &(ry0, ry1, wall) in &sides {
                let mut prev: Option<PartitionId> = None;
                for i in 0..cols {
                    let x0 = f64::from(i) * rw;
                    let room = b.partition(f, rect(x0, ry0, x0 + rw, ry1));
                    let dx = x0 + cfg.door_offset * rw;
                    b.door(dx, wall, f, room, band.segment_at(dx));
                    if cfg.adjacent_room_doors && i % 2 == 1 {
                        b.door(x0, (ry0 + ry1) / 2.0, f, prev.expect("odd rooms follow a neighbour"), room);
                    }
                    prev = Some(room);
                }
            }
            y = sides.last().map_or(c1, |s| s.1);
            bands.push(band);
        }
        if corridors > 1 {
            let spine = b.partition(f, rect(w, bands[0].y0, w + cw, bands[bands.len() - 1].y1));
            for band in &bands {
                let last = band.segments.last().expect("at least one segment").0;
                b.door(w, band.mid_y(), f, last, spine);
            }
        }
        bands_per_floor.push(bands);
    }

    let mut staircases = Vec::new();
    for f in 0..cfg.floors.saturating_sub(1) as i32 {
        let c = f as usize % corridors as usize;
        let west = corridors > 1 || f % 2 == 0;
        let band = &bands_per_floor[f as usize][c];
        let (x0, x1, door_x) = if west {
            (-STAIR_RUN, 0.0, 0.0)
        } else {
            (w, w + STAIR_RUN, w)
        };
        let stair = b.partition(f, rect(x0, band.y0, x1, band.y1));
        staircases.push(StaircaseSpec {
            partition: stair,
            upper_floor: f + 1,
            length: cfg.staircase_length,
        });
        for (level, bands) in [(f, &bands_per_floor[f as usize]), (f + 1, &bands_per_floor[f as usize + 1])] {
            let segments = &bands[c].segments;
            let seg = if west { segments[0].0 } else { segments[segments.len() - 1].0 };
            b.door(door_x, band.mid_y(), level, seg, stair);
        }
    }

    IndoorGraph::build(floors, b.partitions, b.doors, staircases).expect("generated floorplan is valid")
}

/// Partitions objects may choose as destinations: everything but staircases.
pub fn destinations(graph: &IndoorGraph) -> Vec<PartitionId> {
    graph
        .partitions()
        .iter()
        .filter(|p| p.staircase.is_none())
        .map(|p| p.id)
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, VecDeque};

    use super::*;

    fn reachable_from(graph: &IndoorGraph, start: PartitionId) -> BTreeSet<PartitionId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for e in graph.edges().filter(|e| e.from == v) {
                if seen.insert(e.to) {
                    queue.push_back(e.to);
                }
            }
        }
        seen
    }

    fn expected_doors(cfg: &SimConfig) -> usize {
        let rooms = (cfg.room_rows * cfg.rooms_per_row) as usize;
        let adjacent = if cfg.adjacent_room_doors {
            (cfg.room_rows * (cfg.rooms_per_row / 2)) as usize
        } else {
            0
        };
        let corridors = cfg.corridors() as usize;
        let segment_doors = corridors * (cfg.corridor_segments as usize - 1);
        let spine = if corridors > 1 { corridors } else { 0 };
        let per_floor = rooms + adjacent + segment_doors + spine;
        per_floor * cfg.floors as usize + 2 * (cfg.floors as usize - 1)
    }

    #[test]
    fn small_floor() {
        let cfg = SimConfig {
            room_rows: 2,
            rooms_per_row: 2,
            corridor_segments: 1,
            adjacent_room_doors: false,
            ..SimConfig::default()
        };
        let g = generate_floorplan(&cfg);
        assert_eq!(g.partitions().len(), 5);
        assert_eq!(g.doors().len(), 4);
        for p in g.partitions() {
            assert_eq!(reachable_from(&g, p.id).len(), 5);
        }
    }

    #[test]
    fn counts_and_connectivity() {
        let configs = [
            SimConfig::default(),
            SimConfig { floors: 3, ..SimConfig::default() },
            SimConfig { floors: 3, room_rows: 1, rooms_per_row: 3, ..SimConfig::default() },
            SimConfig { floors: 2, room_rows: 5, corridor_segments: 5, ..SimConfig::default() },
            SimConfig::full_scale(),
        ];
        for cfg in configs {
            let g = generate_floorplan(&cfg);
            let corridors = cfg.corridors();
            let per_floor = cfg.room_rows * cfg.rooms_per_row
                + corridors * cfg.corridor_segments
                + u32::from(corridors > 1);
            assert_eq!(g.partitions().len() as u32, per_floor * cfg.floors + cfg.floors - 1);
            assert_eq!(g.doors().len(), expected_doors(&cfg));
            let first = g.partitions()[0].id;
            assert_eq!(reachable_from(&g, first).len(), g.partitions().len(), "{cfg:?}");
        }
    }

    #[test]
    fn full_scale_partitions_per_floor() {
        let cfg = SimConfig { floors: 1, ..SimConfig::full_scale() };
        assert_eq!(generate_floorplan(&cfg).partitions().len(), 141);
    }

    #[test]
    fn staircases_join_floors() {
        let g = generate_floorplan(&SimConfig { floors: 2, ..SimConfig::default() });
        let stair = g.partitions().iter().find(|p| p.staircase.is_some()).unwrap();
        let floors: BTreeSet<i32> = stair
            .door_ids
            .iter()
            .map(|&d| g.door(d).unwrap().location.floor)
            .collect();
        assert_eq!(floors, BTreeSet::from([0, 1]));
        assert!(!destinations(&g).contains(&stair.id));
    }
}
