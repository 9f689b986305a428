use std::collections::{BTreeSet, HashMap};

use icq_core::contact::PROB_EPS;
use icq_core::trajectory::{Contextual, SampleKind};
use icq_core::uncertainty::Deriver;
use icq_core::{ContactParams, GridTime, IndoorGraph, ObjectId, SampleSet, TrajectoryStore};

/// Sum of joint mass over co-partitioned sample pairs closer than `delta`.
pub fn probability_by_definition(graph: &IndoorGraph, a: &SampleSet, b: &SampleSet, delta: f64) -> f64 {
    let mut p = 0.0;
    for s in a.samples() {
        for r in b.samples() {
            if s.partition != r.partition {
                continue;
            }
            if graph.intra_distance(s.partition, &s.location, &r.location) < delta {
                p += s.rho * r.rho;
            }
        }
    }
    p
}

fn close_contacts(
    graph: &IndoorGraph,
    objects: &BTreeSet<ObjectId>,
    query: ObjectId,
    ws: GridTime,
    we: GridTime,
    params: ContactParams,
    mut set: impl FnMut(ObjectId, GridTime) -> SampleSet,
) -> BTreeSet<ObjectId> {
    let mut out = BTreeSet::new();
    let q_sets: Vec<SampleSet> = (ws.0..=we.0).map(|w| set(query, GridTime(w))).collect();
    for &o in objects {
        if o == query {
            continue;
        }
        let mut run = 0u32;
        for (i, w) in (ws.0..=we.0).enumerate() {
            let p = probability_by_definition(graph, &q_sets[i], &set(o, GridTime(w)), params.delta);
            run = if p >= params.eta - PROB_EPS { run + 1 } else { 0 };
            if run >= params.k {
                out.insert(o);
                break;
            }
        }
    }
    out
}

/// Grid times the query covers: `[t_start, t_end]` clipped to the query object's lifespan.
pub fn window_sets(store: &TrajectoryStore, query: ObjectId, t_start: f64, t_end: f64) -> Option<(GridTime, GridTime)> {
    let (s, e) = store.lifespan(query).ok()?;
    let (a, b) = (t_start.max(s), t_end.min(e));
    if a > b {
        return None;
    }
    store.grid().span(a, b)
}

/// Close contacts of `query` straight from the definition: every object, every sampling
/// time, every sample pair. Unseen times use `deriver`, or no samples when it is `None`.
pub fn exhaustive_contacts(
    graph: &IndoorGraph,
    store: &TrajectoryStore,
    deriver: Option<&Deriver>,
    query: ObjectId,
    t_start: f64,
    t_end: f64,
    params: ContactParams,
) -> BTreeSet<ObjectId> {
    let Some((ws, we)) = window_sets(store, query, t_start, t_end) else {
        return BTreeSet::new();
    };
    let objects: BTreeSet<ObjectId> = store.object_ids().iter().copied().collect();
    close_contacts(graph, &objects, query, ws, we, params, |o, w| {
        let t = store.grid().time(w);
        match store.contextual_at(o, w).expect("listed object") {
            None => SampleSet::empty(SampleKind::Derived),
            Some(Contextual::Original(r)) => SampleSet::original(graph, r.location).expect("locatable record"),
            Some(Contextual::Between { prev, next }) => match deriver {
                Some(d) => d.derive(prev, next, t).expect("derivable"),
                None => SampleSet::empty(SampleKind::Derived),
            },
        }
    })
}

/// Close contacts over fixed sample sets; missing entries mean no samples.
pub fn static_contacts(
    graph: &IndoorGraph,
    sets: &HashMap<(ObjectId, GridTime), SampleSet>,
    query: ObjectId,
    ws: GridTime,
    we: GridTime,
    params: ContactParams,
) -> BTreeSet<ObjectId> {
    let objects: BTreeSet<ObjectId> = sets.keys().map(|k| k.0).collect();
    close_contacts(graph, &objects, query, ws, we, params, |o, w| {
        sets.get(&(o, w)).cloned().unwrap_or_else(|| SampleSet::empty(SampleKind::Derived))
    })
}
