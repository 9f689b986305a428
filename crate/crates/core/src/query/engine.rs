use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use super::result::{QueryResult, QueryStats};
use super::search::{c_search, s_search, SearchWorld};
use super::spec::{Method, QuerySpec};
use crate::contact::{ContactEvaluator, DecisionMode, SampleProvider};
use crate::error::QueryError;
use crate::ids::{ObjectId, PartitionId};
use crate::indoor::{IndoorGraph, ObjectTables, PartitionIndex};
use crate::trajectory::{Contextual, GridTime, SampleKind, SampleSet, TrajectoryStore};
use crate::uncertainty::{Deriver, LatticeIndex, RegionModel, DEFAULT_V_MAX};

/// Answers contact queries over one floorplan and one (usually split) trajectory store.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'a> {
    graph: &'a IndoorGraph,
    store: &'a TrajectoryStore,
    lattices: &'a LatticeIndex,
    v_max: f64,
}

impl<'a> Engine<'a> {
    pub fn new(graph: &'a IndoorGraph, store: &'a TrajectoryStore, lattices: &'a LatticeIndex) -> Self {
        Engine {
            graph,
            store,
            lattices,
            v_max: DEFAULT_V_MAX,
        }
    }

    pub fn with_v_max(mut self, v_max: f64) -> Self {
        assert!(v_max > 0.0, "v_max must be positive");
        self.v_max = v_max;
        self
    }

    pub fn graph(&self) -> &'a IndoorGraph {
        self.graph
    }

    pub fn store(&self) -> &'a TrajectoryStore {
        self.store
    }

    pub fn lattices(&self) -> &'a LatticeIndex {
        self.lattices
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    /// The deriver a method uses at unseen times; `None` for raw.
    pub fn deriver(&self, method: Method) -> Option<Deriver<'a>> {
        let model = match method {
            Method::Constrained | Method::Sequential => RegionModel::Indoor,
            Method::Euclidean => RegionModel::Euclidean,
            Method::Raw => return None,
        };
        Some(Deriver::new(self.graph, self.lattices, self.v_max, model))
    }

    /// Sampling times to process: the query interval clipped to the query object's lifespan.
    pub fn window(&self, spec: &QuerySpec) -> Result<Option<(GridTime, GridTime)>, QueryError> {
        let o = spec.query_object;
        let (life_s, life_e) = self
            .store
            .lifespan(o)
            .map_err(|_| QueryError::UnknownObject(o))?;
        let (t_s, t_e) = (spec.t_start.max(life_s), spec.t_end.min(life_e));
        if t_s > t_e {
            return Ok(None);
        }
        Ok(self.store.grid().span(t_s, t_e))
    }

    /// Prepares the sample tables and runs the method's search.
    pub fn process(&self, spec: &QuerySpec) -> Result<QueryResult, QueryError> {
        let started = Instant::now();
        spec.validate()?;
        let Some((ws, we)) = self.window(spec)? else {
            return Ok(QueryResult::empty(started.elapsed()));
        };
        if let Some(kp) = self.store.split_parameter() {
            if spec.params.k < kp {
                log::warn!(
                    "k = {} is below the split parameter k' = {kp}; contacts may be missed",
                    spec.params.k
                );
            }
        }
        let mut stats = QueryStats::default();
        let mut ctx = QueryContext::new(self, spec.method);
        ctx.prepare(spec.query_object, ws, we, &mut stats)?;
        let mode = match spec.method {
            Method::Sequential => DecisionMode::Sequential,
            _ => DecisionMode::Constrained,
        };
        let mut eval = ContactEvaluator::new(spec.params, mode);
        let contacts: BTreeSet<ObjectId> = match spec.method {
            Method::Sequential => s_search(&mut ctx, &mut eval, &mut stats, spec.query_object, ws, we)?,
            _ => c_search(&mut ctx, &mut eval, &mut stats, spec.query_object, ws, we)?,
        };
        stats.peak_bytes = (ctx.tables.approx_bytes() + ctx.presence.approx_bytes() + eval.cache().approx_bytes()) as u64;
        Ok(QueryResult {
            contacts,
            stats,
            window: Some((ws, we)),
            wall: started.elapsed(),
        })
    }
}

/// Per-query sample tables.
///
/// `tables` holds original samples, the query object's derived samples and candidates'
/// samples derived on demand. `presence` lists every other object under each partition its
/// derived samples could fall in, so candidates are found at their unseen times as well.
struct QueryContext<'e> {
    graph: &'e IndoorGraph,
    store: &'e TrajectoryStore,
    deriver: Option<Deriver<'e>>,
    tables: ObjectTables,
    presence: PartitionIndex,
    empty: Arc<SampleSet>,
}

impl<'e> QueryContext<'e> {
    fn new(engine: &Engine<'e>, method: Method) -> Self {
        QueryContext {
            graph: engine.graph,
            store: engine.store,
            deriver: engine.deriver(method),
            tables: ObjectTables::new(),
            presence: PartitionIndex::new(),
            empty: Arc::new(SampleSet::empty(SampleKind::Derived)),
        }
    }

    fn prepare(&mut self, o: ObjectId, ws: GridTime, we: GridTime, stats: &mut QueryStats) -> Result<(), QueryError> {
        let grid = self.store.grid();
        let (t_s, t_e) = (grid.time(ws), grid.time(we));
        for &oi in self.store.object_ids() {
            for piece in self.store.pieces(oi)? {
                let Some((a, b)) = grid.span(piece.start().max(t_s), piece.end().min(t_e)) else {
                    continue;
                };
                for w in a.0..=b.0 {
                    let w = GridTime(w);
                    let t = grid.time(w);
                    match piece.contextual(t) {
                        Contextual::Original(r) => {
                            let set = SampleSet::original(self.graph, r.location)?;
                            self.tables.register_sample(oi, w, Arc::new(set));
                            stats.original_samples += 1;
                        }
                        Contextual::Between { prev, next } => {
                            let Some(deriver) = self.deriver else {
                                continue;
                            };
                            if oi == o {
                                let set = deriver.derive(prev, next, t)?;
                                stats.derivations += 1;
                                self.tables.register_sample(oi, w, Arc::new(set));
                            } else {
                                for v in deriver.candidate_partitions(prev, next, t)? {
                                    self.presence.insert(v, w, oi);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl SampleProvider for QueryContext<'_> {
    fn graph(&self) -> &IndoorGraph {
        self.graph
    }

    fn sample_set(&mut self, o: ObjectId, w: GridTime, stats: &mut QueryStats) -> Result<Arc<SampleSet>, QueryError> {
        if let Some(s) = self.tables.sample_set(o, w) {
            return Ok(s.clone());
        }
        let t = self.store.grid().time(w);
        let set = match self.store.contextual_at(o, w)? {
            None => return Ok(self.empty.clone()),
            Some(Contextual::Original(r)) => Arc::new(SampleSet::original(self.graph, r.location)?),
            Some(Contextual::Between { prev, next }) => match self.deriver {
                Some(d) => {
                    stats.derivations += 1;
                    Arc::new(d.derive(prev, next, t)?)
                }
                None => self.empty.clone(),
            },
        };
        self.tables.register_sample(o, w, set.clone());
        Ok(set)
    }
}

impl SearchWorld for QueryContext<'_> {
    fn candidates(&self, v: PartitionId, w: GridTime) -> Vec<ObjectId> {
        let mut out = self.tables.objects_at(v, w).to_vec();
        for &o in self.presence.objects(v, w) {
            if !out.contains(&o) {
                out.push(o);
            }
        }
        out
    }
}
