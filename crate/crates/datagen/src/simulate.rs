use icq_core::geometry::Location;
use icq_core::ids::{ObjectId, PartitionId};
use icq_core::indoor::IndoorGraph;
use icq_core::trajectory::PositioningRecord;
use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::SimConfig;
use crate::floorplan::destinations;
use crate::path::{route, Knot, TruePath};
use crate::stream_rng;

const MARGIN: f64 = 0.25;

/// One simulated object: its true movement and the records it reports.
#[derive(Debug, Clone, PartialEq)]
pub struct SimObject {
    pub id: ObjectId,
    pub path: TruePath,
    /// Report times are `phase` modulo the report period.
    pub phase: f64,
    /// Records before degradation.
    pub clean: Vec<PositioningRecord>,
    /// Records after dropout (and offsets, for injected objects).
    pub records: Vec<PositioningRecord>,
}

/// Uniform point of `v`, kept `MARGIN` away from the walls.
pub fn random_point(graph: &IndoorGraph, v: PartitionId, rng: &mut impl Rng) -> Location {
    let p = graph.partition(v).expect("partition of the graph");
    let b = p.bbox;
    let mx = MARGIN.min(b.width() / 4.0);
    let my = MARGIN.min(b.height() / 4.0);
    loop {
        let l = Location::new(
            rng.gen_range(b.min_x + mx..=b.max_x - mx),
            rng.gen_range(b.min_y + my..=b.max_y - my),
            p.floor,
        );
        if p.contains(&l) {
            return l;
        }
    }
}

fn uniform(rng: &mut impl Rng, range: [f64; 2]) -> f64 {
    if range[0] < range[1] {
        rng.gen_range(range[0]..range[1])
    } else {
        range[0]
    }
}

/// Random-destination movement over `[start, end]`: dwell, walk the shortest door route to
/// a random point of a random partition, repeat. Speed is redrawn for every straight leg.
pub fn simulate_path(
    graph: &IndoorGraph,
    cfg: &SimConfig,
    start: f64,
    end: f64,
    rng: &mut impl Rng,
) -> TruePath {
    let dests = destinations(graph);
    let mut v = dests[rng.gen_range(0..dests.len())];
    let mut here = random_point(graph, v, rng);
    let mut t = start;
    let mut knots = vec![Knot { t, location: here }];
    while t < end {
        t += uniform(rng, cfg.dwell);
        knots.push(Knot { t, location: here });
        if t >= end {
            break;
        }
        let to_p = dests[rng.gen_range(0..dests.len())];
        let to = random_point(graph, to_p, rng);
        let legs = route(graph, here, v, to, to_p).expect("generated floorplans are connected");
        for leg in legs {
            let speed = uniform(rng, cfg.speed) * cfg.v_max;
            let p = graph.partition(leg.partition).expect("partition of the graph");
            let dist = graph.intra_distance(p.id, &here, &leg.to);
            if here.floor != leg.to.floor {
                // Inside a staircase positions live on its base floor.
                let base = p.floor;
                if here.floor != base {
                    knots.push(Knot { t, location: Location { floor: base, ..here } });
                }
                t += dist / speed;
                knots.push(Knot { t, location: Location { floor: base, ..leg.to } });
                if leg.to.floor != base {
                    knots.push(Knot { t, location: leg.to });
                }
            } else {
                t += dist / speed;
                knots.push(Knot { t, location: leg.to });
            }
            here = leg.to;
        }
        v = to_p;
    }
    TruePath::new(knots, end)
}

/// Report times inside `[start, end - expiry]` congruent to `phase`.
pub fn report_times(cfg: &SimConfig, phase: f64, start: f64, end: f64) -> Vec<f64> {
    let first = ((start - phase) / cfg.report_period).ceil();
    let mut out = Vec::new();
    let mut j = first;
    loop {
        let t = phase + j * cfg.report_period;
        if t + cfg.expiry > end {
            break;
        }
        out.push(t);
        j += 1.0;
    }
    out
}

pub fn sample_records(cfg: &SimConfig, path: &TruePath, times: &[f64]) -> Vec<PositioningRecord> {
    times
        .iter()
        .map(|&t| PositioningRecord {
            location: path.at(t).expect("report time inside the path"),
            t,
            et: t + cfg.expiry,
        })
        .collect()
}

/// Removes `round(fraction * n)` records chosen uniformly, always keeping at least one.
pub fn drop_records(records: &[PositioningRecord], fraction: f64, rng: &mut impl Rng) -> Vec<PositioningRecord> {
    let n = records.len();
    if n == 0 {
        return Vec::new();
    }
    let remove = ((fraction * n as f64).round() as usize).min(n - 1);
    let mut gone = vec![false; n];
    for i in index::sample(rng, n, remove) {
        gone[i] = true;
    }
    records
        .iter()
        .zip(gone)
        .filter(|(_, g)| !g)
        .map(|(r, _)| *r)
        .collect()
}

/// Simulates one object with its own random stream.
pub fn simulate_object(graph: &IndoorGraph, cfg: &SimConfig, id: ObjectId) -> SimObject {
    let mut rng: ChaCha8Rng = stream_rng(cfg.seed, u64::from(id.0));
    let start = rng.gen_range(0.0..=cfg.horizon - cfg.min_lifespan);
    let end = start + uniform(&mut rng, [cfg.min_lifespan, cfg.horizon - start]);
    // Each record then covers exactly one sampling time.
    let phase = cfg.report_period - rng.gen_range(0.0..=cfg.expiry);
    let path = simulate_path(graph, cfg, start, end, &mut rng);
    let clean = sample_records(cfg, &path, &report_times(cfg, phase, start, end));
    let records = drop_records(&clean, cfg.dropout, &mut rng);
    SimObject {
        id,
        path,
        phase,
        clean,
        records,
    }
}

/// Objects `1..=n`.
pub fn simulate(cfg: &SimConfig, graph: &IndoorGraph, n: u32) -> Vec<SimObject> {
    (1..=n).map(|i| simulate_object(graph, cfg, ObjectId(i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floorplan::generate_floorplan;

    #[test]
    fn no_objects() {
        let cfg = SimConfig::default();
        assert!(simulate(&cfg, &generate_floorplan(&cfg), 0).is_empty());
    }

    #[test]
    fn report_times_cover_one_sampling_time_each() {
        let cfg = SimConfig::default();
        let times = report_times(&cfg, 7.5, 13.0, 100.0);
        assert_eq!(times, vec![17.5, 27.5, 37.5, 47.5, 57.5, 67.5, 77.5, 87.5]);
        for phase in [5.0, 6.2, 10.0] {
            for t in report_times(&cfg, phase, 0.0, 200.0) {
                let covered = (0..=30).filter(|w| (t..=t + cfg.expiry).contains(&(f64::from(*w) * 10.0))).count();
                assert_eq!(covered, 1, "phase {phase}, t {t}");
            }
        }
    }

    #[test]
    fn dropout_is_exact() {
        let cfg = SimConfig::default();
        let g = generate_floorplan(&cfg);
        let o = simulate_object(&g, &cfg, ObjectId(3));
        let expect = o.clean.len() - (0.1 * o.clean.len() as f64).round() as usize;
        assert_eq!(o.records.len(), expect);
        assert!(o.records.iter().all(|r| o.clean.contains(r)));
        assert!(o.records.iter().all(|r| (r.et - r.t - cfg.expiry).abs() < 1e-9));
    }
}
