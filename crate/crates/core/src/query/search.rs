use std::collections::{BTreeSet, HashSet};

use super::result::QueryStats;
use crate::contact::{ContactEvaluator, SampleProvider};
use crate::error::QueryError;
use crate::ids::{ObjectId, PartitionId};
use crate::trajectory::GridTime;

/// Sample access plus candidate discovery by partition and time.
pub trait SearchWorld: SampleProvider {
    /// Objects that may have samples in `v` at `w`, in a deterministic order.
    fn candidates(&self, v: PartitionId, w: GridTime) -> Vec<ObjectId>;
}

fn time_steps(ws: GridTime, we: GridTime) -> impl Iterator<Item = GridTime> {
    (ws.0..=we.0).map(GridTime)
}

/// Calls `f` once per candidate sharing a partition with `o`'s samples at `w`.
fn for_each_candidate<W: SearchWorld + ?Sized>(
    world: &mut W,
    stats: &mut QueryStats,
    o: ObjectId,
    w: GridTime,
    mut f: impl FnMut(&mut W, &mut QueryStats, ObjectId) -> Result<(), QueryError>,
) -> Result<(), QueryError> {
    let samples = world.sample_set(o, w, stats)?;
    let mut visited: HashSet<ObjectId> = HashSet::new();
    for v in samples.partitions() {
        for oi in world.candidates(v, w) {
            if oi == o || !visited.insert(oi) {
                continue;
            }
            f(world, stats, oi)?;
        }
    }
    Ok(())
}

/// Constrained search with time skipping.
///
/// At each sampling time every candidate's instant contact is decided once. A window of `k`
/// times ending at the current time is scanned only if no known non-contact time falls inside
/// it. Candidates already in the result are not examined again.
pub fn c_search<W: SearchWorld + ?Sized>(
    world: &mut W,
    eval: &mut ContactEvaluator,
    stats: &mut QueryStats,
    o: ObjectId,
    ws: GridTime,
    we: GridTime,
) -> Result<BTreeSet<ObjectId>, QueryError> {
    let k1 = i64::from(eval.params().k) - 1;
    let mut result = BTreeSet::new();
    for ts in time_steps(ws, we) {
        for_each_candidate(world, stats, o, ts, |world, stats, oi| {
            if result.contains(&oi) {
                return Ok(());
            }
            stats.candidates_examined += 1;
            let t_ln = eval.latest_non_contact(oi);
            let t_ec = if eval.instant_contact(world, stats, o, oi, ts)? {
                ts
            } else {
                ts.offset(-1)
            };
            let t_sc = ws.max(t_ec.offset(-k1)).max(t_ln.offset(1));
            if t_ec.0 - t_sc.0 < k1 {
                stats.skipped_windows += 1;
                return Ok(());
            }
            let mut tq = t_sc;
            while tq.0 + k1 <= t_ec.0 {
                if eval.is_close_contact(world, stats, o, oi, tq)? {
                    result.insert(oi);
                    break;
                }
                tq = tq.offset(1);
            }
            Ok(())
        })?;
    }
    Ok(result)
}

/// Sequential search: every candidate met at a sampling time is checked for close contact
/// over the `k` times starting there, plus from `ws` while still within `k` times of it.
pub fn s_search<W: SearchWorld + ?Sized>(
    world: &mut W,
    eval: &mut ContactEvaluator,
    stats: &mut QueryStats,
    o: ObjectId,
    ws: GridTime,
    we: GridTime,
) -> Result<BTreeSet<ObjectId>, QueryError> {
    let k1 = i64::from(eval.params().k) - 1;
    let mut result = BTreeSet::new();
    if we.0 - k1 < ws.0 {
        return Ok(result);
    }
    for ts in time_steps(ws, we.offset(-k1)) {
        for_each_candidate(world, stats, o, ts, |world, stats, oi| {
            stats.candidates_examined += 1;
            if eval.is_close_contact(world, stats, o, oi, ts)? {
                result.insert(oi);
            }
            if ts.0 <= ws.0 + k1 && eval.is_close_contact(world, stats, o, oi, ws)? {
                result.insert(oi);
            }
            Ok(())
        })?;
    }
    Ok(result)
}
