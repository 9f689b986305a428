use icq_core::trajectory::SampleKind;
use icq_core::{GridTime, IndoorGraph, Location, ObjectId, PositioningRecord, SampleSet, SamplingGrid, TrajectoryStore};
use rand::seq::SliceRandom;
use rand::Rng;

const MARGIN: f64 = 0.05;

fn point_in(graph: &IndoorGraph, index: usize, rng: &mut impl Rng) -> Location {
    let p = &graph.partitions()[index];
    let b = p.bbox;
    loop {
        let l = Location::new(
            rng.gen_range(b.min_x + MARGIN..b.max_x - MARGIN),
            rng.gen_range(b.min_y + MARGIN..b.max_y - MARGIN),
            p.floor,
        );
        if p.contains(&l) {
            return l;
        }
    }
}

/// A point strictly inside a uniformly chosen partition.
pub fn random_location(graph: &IndoorGraph, rng: &mut impl Rng) -> Location {
    point_in(graph, rng.gen_range(0..graph.partitions().len()), rng)
}

/// Moves `l` by up to `step` metres per axis, staying inside its own partition.
fn jitter(graph: &IndoorGraph, l: Location, step: f64, rng: &mut impl Rng) -> Location {
    let v = graph.host(&l).expect("located");
    let p = graph.partition(v).expect("known partition");
    let b = p.bbox;
    for _ in 0..16 {
        let c = Location::new(
            (l.x + rng.gen_range(-step..=step)).clamp(b.min_x + MARGIN, b.max_x - MARGIN),
            (l.y + rng.gen_range(-step..=step)).clamp(b.min_y + MARGIN, b.max_y - MARGIN),
            l.floor,
        );
        if p.contains(&c) && graph.host(&c).ok() == Some(v) {
            return c;
        }
    }
    l
}

/// Either a single certain location or up to `max_samples` weighted points scattered over
/// one to three partitions, often close to `near`.
pub fn random_sample_set(graph: &IndoorGraph, near: Location, max_samples: usize, rng: &mut impl Rng) -> SampleSet {
    if rng.gen_bool(0.25) {
        return SampleSet::original(graph, jitter(graph, near, 2.0, rng)).expect("located");
    }
    let n = rng.gen_range(1..=max_samples.max(1));
    let mut anchors = vec![near];
    for _ in 0..rng.gen_range(0..3) {
        anchors.push(random_location(graph, rng));
    }
    let mut items = Vec::with_capacity(n);
    for _ in 0..n {
        let a = *anchors.choose(rng).expect("non-empty");
        items.push((jitter(graph, a, 3.0, rng), rng.gen_range(0.05..1.0)));
    }
    let total: f64 = items.iter().map(|(_, w)| w).sum();
    for item in &mut items {
        item.1 /= total;
    }
    SampleSet::located(graph, SampleKind::Derived, &items).expect("normalized samples")
}

/// Objects wandering among the partitions over grid times `0..times`, reporting with
/// probability `report` at each one. Most steps stay near the previous position, and about
/// half the objects start next to object 1.
pub fn random_store(graph: &IndoorGraph, objects: u32, times: i64, report: f64, rng: &mut impl Rng) -> TrajectoryStore {
    let grid = SamplingGrid::new(0.0, 10.0);
    let anchor = random_location(graph, rng);
    let mut records = Vec::new();
    for id in 1..=objects {
        let o = ObjectId(id);
        let a = rng.gen_range(0..=times / 3);
        let b = rng.gen_range((a + times / 3).min(times - 1)..times);
        let mut l = if id == 1 || rng.gen_bool(0.5) {
            jitter(graph, anchor, 1.5, rng)
        } else {
            random_location(graph, rng)
        };
        let mut any = false;
        for w in a..=b {
            if rng.gen_bool(0.05) {
                l = random_location(graph, rng);
            } else {
                l = jitter(graph, l, 0.5, rng);
            }
            if rng.gen_bool(report) || (!any && w == b) {
                let t = grid.time(GridTime(w));
                let et = t + rng.gen_range(0.0..5.0);
                records.push((o, PositioningRecord { location: l, t, et }));
                any = true;
            }
        }
    }
    TrajectoryStore::ingest(grid, records).expect("records are disjoint")
}
