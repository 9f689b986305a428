use std::collections::HashMap;
use std::sync::Arc;

use super::result::QueryStats;
use super::search::SearchWorld;
use crate::contact::SampleProvider;
use crate::error::QueryError;
use crate::ids::{ObjectId, PartitionId};
use crate::indoor::{IndoorGraph, PartitionIndex};
use crate::trajectory::{GridTime, SampleKind, SampleSet};

/// Fixed sample sets per object and time, for hand-built scenarios and oracle checks.
#[derive(Debug, Clone)]
pub struct StaticWorld<'g> {
    graph: &'g IndoorGraph,
    sets: HashMap<(ObjectId, GridTime), Arc<SampleSet>>,
    index: PartitionIndex,
    empty: Arc<SampleSet>,
}

impl<'g> StaticWorld<'g> {
    pub fn new(graph: &'g IndoorGraph) -> Self {
        StaticWorld {
            graph,
            sets: HashMap::new(),
            index: PartitionIndex::new(),
            empty: Arc::new(SampleSet::empty(SampleKind::Derived)),
        }
    }

    /// Sets `o`'s samples at `w`. Objects must be inserted at most once per time.
    pub fn insert(&mut self, o: ObjectId, w: GridTime, set: SampleSet) {
        for v in set.partitions() {
            self.index.insert(v, w, o);
        }
        let old = self.sets.insert((o, w), Arc::new(set));
        assert!(old.is_none(), "{o} already has samples at {w}");
    }
}

impl SampleProvider for StaticWorld<'_> {
    fn graph(&self) -> &IndoorGraph {
        self.graph
    }

    fn sample_set(&mut self, o: ObjectId, w: GridTime, _: &mut QueryStats) -> Result<Arc<SampleSet>, QueryError> {
        Ok(self.sets.get(&(o, w)).unwrap_or(&self.empty).clone())
    }
}

impl SearchWorld for StaticWorld<'_> {
    fn candidates(&self, v: PartitionId, w: GridTime) -> Vec<ObjectId> {
        self.index.objects(v, w).to_vec()
    }
}
