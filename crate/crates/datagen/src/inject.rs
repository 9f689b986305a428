use icq_core::geometry::Location;
use icq_core::ids::ObjectId;
use icq_core::indoor::IndoorGraph;
use rand::Rng;

use crate::config::SimConfig;
use crate::simulate::{drop_records, report_times, sample_records, SimObject};
use crate::GenError;

const OFFSET_HALVINGS: u32 = 8;

/// Moves `l` by a uniform offset in a disc of `radius`, halving the offset until the point
/// stays in its host partition.
pub fn offset_location(graph: &IndoorGraph, l: Location, radius: f64, rng: &mut impl Rng) -> Location {
    let Ok(host) = graph.host(&l) else {
        return l;
    };
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let (mut dx, mut dy) = (r * theta.cos(), r * theta.sin());
    for _ in 0..OFFSET_HALVINGS {
        let moved = Location::new(l.x + dx, l.y + dy, l.floor);
        if graph.host(&moved).is_ok_and(|h| h == host) {
            return moved;
        }
        dx /= 2.0;
        dy /= 2.0;
    }
    l
}

/// Copies of random segments of `query`'s true path, reported at the query's report times
/// and then degraded by dropout and location offsets. Ids start at `first_id`.
pub fn inject_contacts(
    graph: &IndoorGraph,
    cfg: &SimConfig,
    query: &SimObject,
    n: u32,
    first_id: u32,
    rng: &mut impl Rng,
) -> Result<Vec<SimObject>, GenError> {
    let (start, end) = (query.path.start(), query.path.end());
    let lifespan = end - start;
    if lifespan < cfg.segment[0] {
        return Err(GenError::QueryTooShort {
            object: query.id,
            lifespan,
            required: cfg.segment[0],
        });
    }
    let mut out = Vec::with_capacity(n as usize);
    for i in 0..n {
        let hi = cfg.segment[1].min(lifespan);
        let len = if cfg.segment[0] < hi {
            rng.gen_range(cfg.segment[0]..=hi)
        } else {
            cfg.segment[0]
        };
        let a = rng.gen_range(start..=end - len);
        let path = query.path.window(a, a + len);
        let clean = sample_records(cfg, &path, &report_times(cfg, query.phase, a, a + len));
        let mut records = drop_records(&clean, cfg.dropout, rng);
        for r in &mut records {
            if rng.gen_bool(cfg.offset_fraction) {
                r.location = offset_location(graph, r.location, cfg.offset_radius, rng);
            }
        }
        out.push(SimObject {
            id: ObjectId(first_id + i),
            path,
            phase: query.phase,
            clean,
            records,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floorplan::generate_floorplan;
    use crate::simulate::simulate_object;
    use crate::stream_rng;

    #[test]
    fn segments_and_offsets() {
        let cfg = SimConfig::default();
        let g = generate_floorplan(&cfg);
        let q = simulate_object(&g, &cfg, ObjectId(1));
        let mut rng = stream_rng(5, 0);
        let injected = inject_contacts(&g, &cfg, &q, 10, 500, &mut rng).unwrap();
        assert_eq!(injected.len(), 10);
        for (i, o) in injected.iter().enumerate() {
            assert_eq!(o.id, ObjectId(500 + i as u32));
            let len = o.path.end() - o.path.start();
            assert!((500.0..=1800.0).contains(&len), "{len}");
            for r in &o.records {
                let truth = o.path.at(r.t).unwrap();
                assert!(truth.planar_distance(&r.location) <= cfg.offset_radius + 1e-9);
                assert_eq!(g.host(&truth).unwrap(), g.host(&r.location).unwrap());
                assert!(q.clean.iter().any(|c| c.t == r.t));
            }
        }
    }

    #[test]
    fn short_query_is_rejected() {
        let cfg = SimConfig { segment: [5_000.0, 6_000.0], min_lifespan: 600.0, ..SimConfig::default() };
        let g = generate_floorplan(&cfg);
        let mut q = simulate_object(&g, &cfg, ObjectId(1));
        q.path = q.path.window(q.path.start(), q.path.start() + 600.0);
        let err = inject_contacts(&g, &cfg, &q, 1, 10, &mut stream_rng(1, 0)).unwrap_err();
        assert!(matches!(err, GenError::QueryTooShort { .. }));
    }
}
