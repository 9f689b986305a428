use std::collections::{BTreeSet, HashMap};

use icq_core::geometry::Location;
use icq_core::ids::{ObjectId, PartitionId};
use icq_core::indoor::IndoorGraph;
use icq_core::trajectory::{GridTime, SamplingGrid};

use crate::simulate::SimObject;

/// True positions of every object at every sampling time it is alive.
#[derive(Debug, Clone)]
pub struct TruthIndex<'g> {
    graph: &'g IndoorGraph,
    grid: SamplingGrid,
    tracks: HashMap<ObjectId, Track>,
    ids: Vec<ObjectId>,
}

#[derive(Debug, Clone)]
struct Track {
    first: GridTime,
    /// Position and host per sampling time from `first` on; `None` when unlocatable.
    at: Vec<Option<(Location, PartitionId)>>,
}

impl Track {
    fn get(&self, w: GridTime) -> Option<(Location, PartitionId)> {
        let i = usize::try_from(w.0 - self.first.0).ok()?;
        self.at.get(i).copied().flatten()
    }
}

impl<'g> TruthIndex<'g> {
    pub fn new<'a>(graph: &'g IndoorGraph, grid: SamplingGrid, objects: impl IntoIterator<Item = &'a SimObject>) -> Self {
        let mut tracks = HashMap::new();
        for o in objects {
            let Some((a, b)) = grid.span(o.path.start(), o.path.end()) else {
                continue;
            };
            let at = (a.0..=b.0)
                .map(|w| {
                    let l = o.path.at(grid.time(GridTime(w)))?;
                    graph.host(&l).ok().map(|v| (l, v))
                })
                .collect();
            tracks.insert(o.id, Track { first: a, at });
        }
        let mut ids: Vec<ObjectId> = tracks.keys().copied().collect();
        ids.sort();
        TruthIndex { graph, grid, tracks, ids }
    }

    pub fn position(&self, o: ObjectId, w: GridTime) -> Option<(Location, PartitionId)> {
        self.tracks.get(&o)?.get(w)
    }

    /// Objects whose true positions share a partition with `query` at less than `delta`
    /// for at least `k` consecutive sampling times inside `[t_start, t_end]`.
    pub fn contacts(&self, query: ObjectId, t_start: f64, t_end: f64, delta: f64, k: u32) -> BTreeSet<ObjectId> {
        let mut out = BTreeSet::new();
        let (Some(q), Some((ws, we))) = (self.tracks.get(&query), self.grid.span(t_start, t_end)) else {
            return out;
        };
        let qs: Vec<(GridTime, Location, PartitionId)> = (ws.0..=we.0)
            .filter_map(|w| q.get(GridTime(w)).map(|(l, v)| (GridTime(w), l, v)))
            .collect();
        for &o in &self.ids {
            if o == query {
                continue;
            }
            let track = &self.tracks[&o];
            let mut run = 0u32;
            let mut last: Option<GridTime> = None;
            for &(w, lq, vq) in &qs {
                if last.is_some_and(|p| p.0 + 1 != w.0) {
                    run = 0;
                }
                last = Some(w);
                let close = track
                    .get(w)
                    .is_some_and(|(l, v)| v == vq && self.graph.intra_distance(v, &lq, &l) < delta);
                run = if close { run + 1 } else { 0 };
                if run >= k {
                    out.insert(o);
                    break;
                }
            }
        }
        out
    }
}
