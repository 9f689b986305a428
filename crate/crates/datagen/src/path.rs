use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use icq_core::geometry::Location;
use icq_core::ids::{DoorId, PartitionId};
use icq_core::indoor::IndoorGraph;

/// Position at a time; consecutive knots are joined by straight motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot {
    pub t: f64,
    pub location: Location,
}

/// Continuous ground-truth movement of one object over `[start, end]`.
///
/// Knots are time-ordered. Two knots may share a time, which marks an instant floor change
/// at a staircase door; the later one wins.
#[derive(Debug, Clone, PartialEq)]
pub struct TruePath {
    knots: Vec<Knot>,
    end: f64,
}

impl TruePath {
    pub fn new(knots: Vec<Knot>, end: f64) -> Self {
        assert!(!knots.is_empty(), "a path needs at least one knot");
        assert!(knots.windows(2).all(|w| w[0].t <= w[1].t), "knots must be time-ordered");
        assert!(knots[0].t <= end, "path ends before it starts");
        TruePath { knots, end }
    }

    pub fn start(&self) -> f64 {
        self.knots[0].t
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    /// Position at `t`, or `None` outside `[start, end]`.
    pub fn at(&self, t: f64) -> Option<Location> {
        if t < self.start() || t > self.end {
            return None;
        }
        let i = self.knots.partition_point(|k| k.t <= t) - 1;
        let a = self.knots[i];
        let Some(b) = self.knots.get(i + 1) else {
            return Some(a.location);
        };
        let f = (t - a.t) / (b.t - a.t);
        Some(Location::new(
            a.location.x + f * (b.location.x - a.location.x),
            a.location.y + f * (b.location.y - a.location.y),
            a.location.floor,
        ))
    }

    /// The part of the path inside `[a, b]`, which must lie within `[start, end]`.
    pub fn window(&self, a: f64, b: f64) -> TruePath {
        assert!(self.start() <= a && a <= b && b <= self.end, "window outside the path");
        let mut knots = vec![Knot {
            t: a,
            location: self.at(a).expect("a inside the path"),
        }];
        knots.extend(self.knots.iter().filter(|k| a < k.t && k.t <= b).copied());
        if knots[knots.len() - 1].t < b {
            knots.push(Knot {
                t: b,
                location: self.at(b).expect("b inside the path"),
            });
        }
        TruePath::new(knots, b)
    }
}

/// One straight leg of a route: walk through `partition` to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leg {
    pub partition: PartitionId,
    pub to: Location,
}

type State = (DoorId, PartitionId);

fn push(heap: &mut BinaryHeap<Entry>, dist: &mut HashMap<State, f64>, state: State, d: f64) -> bool {
    if dist.get(&state).is_some_and(|&old| old <= d) {
        return false;
    }
    dist.insert(state, d);
    heap.push(Entry { dist: d, state });
    true
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    state: State,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.state.cmp(&self.state))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest door sequence from `from` (in `from_p`) to `to` (in `to_p`), as straight legs.
/// `None` when `to_p` cannot be reached.
pub fn route(
    graph: &IndoorGraph,
    from: Location,
    from_p: PartitionId,
    to: Location,
    to_p: PartitionId,
) -> Option<Vec<Leg>> {
    if from_p == to_p {
        return Some(vec![Leg { partition: to_p, to }]);
    }
    let door_loc = |d: DoorId| graph.door(d).expect("door of the graph").location;
    let mut dist: HashMap<State, f64> = HashMap::new();
    let mut pred: HashMap<State, State> = HashMap::new();
    let mut heap = BinaryHeap::new();
    for &d in graph.leavable_doors(from_p).ok()? {
        let cost = graph.intra_distance(from_p, &from, &door_loc(d));
        for &next in graph.enterable_partitions(d).ok()? {
            if next != from_p {
                push(&mut heap, &mut dist, (d, next), cost);
            }
        }
    }
    let mut best: Option<(f64, State)> = None;
    while let Some(Entry { dist: du, state }) = heap.pop() {
        if dist.get(&state).is_some_and(|&d| d < du) {
            continue;
        }
        if best.is_some_and(|(b, _)| du >= b) {
            break;
        }
        let (door, v) = state;
        let here = door_loc(door);
        if v == to_p {
            let total = du + graph.intra_distance(v, &here, &to);
            if best.is_none_or(|(b, _)| total < b) {
                best = Some((total, state));
            }
            continue;
        }
        for &d in graph.leavable_doors(v).ok()? {
            if d == door {
                continue;
            }
            let Ok(step) = graph.door_to_door(v, door, d) else {
                continue;
            };
            for &next in graph.enterable_partitions(d).ok()? {
                if next != v && push(&mut heap, &mut dist, (d, next), du + step) {
                    pred.insert((d, next), state);
                }
            }
        }
    }
    let (_, mut state) = best?;
    let mut legs = vec![Leg { partition: to_p, to }];
    loop {
        let walked = match pred.get(&state) {
            Some(&p) => p.1,
            None => from_p,
        };
        legs.push(Leg {
            partition: walked,
            to: door_loc(state.0),
        });
        match pred.get(&state) {
            Some(&p) => state = p,
            None => break,
        }
    }
    legs.reverse();
    Some(legs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SimConfig;
    use crate::floorplan::generate_floorplan;

    fn knot(t: f64, x: f64, y: f64, floor: i32) -> Knot {
        Knot {
            t,
            location: Location::new(x, y, floor),
        }
    }

    #[test]
    fn interpolation_and_floor_jumps() {
        let p = TruePath::new(
            vec![knot(0.0, 0.0, 0.0, 0), knot(10.0, 10.0, 0.0, 0), knot(10.0, 10.0, 0.0, 1), knot(20.0, 10.0, 5.0, 1)],
            25.0,
        );
        assert_eq!(p.at(5.0), Some(Location::new(5.0, 0.0, 0)));
        assert_eq!(p.at(10.0), Some(Location::new(10.0, 0.0, 1)));
        assert_eq!(p.at(22.0), Some(Location::new(10.0, 5.0, 1)));
        assert_eq!(p.at(26.0), None);
        assert_eq!(p.at(-1.0), None);
        let w = p.window(5.0, 15.0);
        assert_eq!(w.start(), 5.0);
        assert_eq!(w.end(), 15.0);
        for t in [5.0, 7.5, 10.0, 12.0, 15.0] {
            assert_eq!(w.at(t), p.at(t));
        }
    }

    #[test]
    fn routes_follow_doors() {
        let g = generate_floorplan(&SimConfig { floors: 2, ..SimConfig::default() });
        let parts = g.partitions();
        for a in parts.iter().filter(|p| p.staircase.is_none()) {
            for b in parts.iter().filter(|p| p.staircase.is_none()).step_by(3) {
                let (from, to) = (a.centroid(), b.centroid());
                let legs = route(&g, from, a.id, to, b.id).unwrap();
                assert_eq!(legs.last().unwrap().to, to);
                let mut v = a.id;
                for leg in &legs[..legs.len() - 1] {
                    assert_eq!(leg.partition, v);
                    let p = g.partition(v).unwrap();
                    let d = *p.door_ids.iter().find(|&&d| g.door(d).unwrap().location == leg.to).unwrap();
                    v = *g.enterable_partitions(d).unwrap().iter().find(|&&n| n != v).unwrap();
                }
                assert_eq!(legs.last().unwrap().partition, v);
                assert_eq!(v, b.id);
            }
        }
    }
}
