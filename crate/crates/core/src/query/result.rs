use std::collections::BTreeSet;
use std::time::Duration;

use serde::Serialize;

use crate::ids::ObjectId;
use crate::trajectory::GridTime;

/// Work counters of one query. Identical inputs give identical counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct QueryStats {
    /// Instant-contact invocations, cache hits included.
    pub instant_contact_calls: u64,
    /// Instant-contact invocations that missed the cache.
    pub instant_contact_evaluations: u64,
    /// Sample sets derived at unseen sampling times.
    pub derivations: u64,
    /// Sample pairs whose distance was computed.
    pub pair_distance_evals: u64,
    /// Candidate objects examined by the search.
    pub candidates_examined: u64,
    /// Examinations where the time-skipping rule ruled out every window.
    pub skipped_windows: u64,
    /// Original sample sets registered during preparation.
    pub original_samples: u64,
    /// Estimated peak bytes held by sample tables and caches.
    pub peak_bytes: u64,
}

impl std::ops::AddAssign for QueryStats {
    /// Sums the counters; `peak_bytes` keeps the larger value.
    fn add_assign(&mut self, o: QueryStats) {
        self.instant_contact_calls += o.instant_contact_calls;
        self.instant_contact_evaluations += o.instant_contact_evaluations;
        self.derivations += o.derivations;
        self.pair_distance_evals += o.pair_distance_evals;
        self.candidates_examined += o.candidates_examined;
        self.skipped_windows += o.skipped_windows;
        self.original_samples += o.original_samples;
        self.peak_bytes = self.peak_bytes.max(o.peak_bytes);
    }
}

/// Answer of one query.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    pub contacts: BTreeSet<ObjectId>,
    pub stats: QueryStats,
    /// Sampling times processed, after clipping to the query object's lifespan.
    pub window: Option<(GridTime, GridTime)>,
    pub wall: Duration,
}

impl QueryResult {
    pub fn empty(wall: Duration) -> Self {
        QueryResult {
            contacts: BTreeSet::new(),
            stats: QueryStats::default(),
            window: None,
            wall,
        }
    }
}
