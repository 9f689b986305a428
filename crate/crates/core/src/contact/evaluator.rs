use std::collections::HashMap;
use std::mem::size_of;
use std::sync::Arc;

use super::probability::{constrained_decision, sequential_decision, ContactParams};
use crate::error::QueryError;
use crate::ids::ObjectId;
use crate::indoor::IndoorGraph;
use crate::query::QueryStats;
use crate::trajectory::{GridTime, SampleSet};

/// Access to the sample sets of objects at sampling times.
pub trait SampleProvider {
    fn graph(&self) -> &IndoorGraph;

    /// Samples of `o` at `w`; empty when `o` is absent at `w`.
    fn sample_set(&mut self, o: ObjectId, w: GridTime, stats: &mut QueryStats) -> Result<Arc<SampleSet>, QueryError>;
}

/// Which instant-contact procedure evaluates cache misses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionMode {
    Sequential,
    Constrained,
}

/// Query-local instant-contact results and per-object latest non-contact times.
#[derive(Debug, Clone, Default)]
pub struct ContactCache {
    results: HashMap<(ObjectId, ObjectId, GridTime), bool>,
    latest_non_contact: HashMap<ObjectId, GridTime>,
}

impl ContactCache {
    fn key(a: ObjectId, b: ObjectId, w: GridTime) -> (ObjectId, ObjectId, GridTime) {
        if a <= b {
            (a, b, w)
        } else {
            (b, a, w)
        }
    }

    pub fn get(&self, a: ObjectId, b: ObjectId, w: GridTime) -> Option<bool> {
        self.results.get(&Self::key(a, b, w)).copied()
    }

    pub fn insert(&mut self, a: ObjectId, b: ObjectId, w: GridTime, contact: bool) {
        self.results.insert(Self::key(a, b, w), contact);
    }

    /// Latest time `o` was found out of contact, or [`GridTime::NEG_INFINITY`].
    pub fn latest_non_contact(&self, o: ObjectId) -> GridTime {
        self.latest_non_contact
            .get(&o)
            .copied()
            .unwrap_or(GridTime::NEG_INFINITY)
    }

    pub fn note_non_contact(&mut self, o: ObjectId, w: GridTime) {
        let e = self.latest_non_contact.entry(o).or_insert(w);
        *e = (*e).max(w);
    }

    pub fn len(&self) -> usize {
        self.results.len()
    }

    pub fn is_empty(&self) -> bool {
        self.results.is_empty()
    }

    pub fn clear(&mut self) {
        self.results.clear();
        self.latest_non_contact.clear();
    }

    pub fn approx_bytes(&self) -> usize {
        self.results.len() * size_of::<((ObjectId, ObjectId, GridTime), bool)>()
            + self.latest_non_contact.len() * size_of::<(ObjectId, GridTime)>()
    }
}

/// Cached instant and close contact determination for one query.
#[derive(Debug, Clone)]
pub struct ContactEvaluator {
    params: ContactParams,
    mode: DecisionMode,
    cache: ContactCache,
}

impl ContactEvaluator {
    pub fn new(params: ContactParams, mode: DecisionMode) -> Self {
        ContactEvaluator {
            params,
            mode,
            cache: ContactCache::default(),
        }
    }

    pub fn params(&self) -> ContactParams {
        self.params
    }

    pub fn cache(&self) -> &ContactCache {
        &self.cache
    }

    pub fn cache_mut(&mut self) -> &mut ContactCache {
        &mut self.cache
    }

    pub fn latest_non_contact(&self, o: ObjectId) -> GridTime {
        self.cache.latest_non_contact(o)
    }

    /// Whether `o` and `other` are in instant contact at `w`. A negative result moves
    /// `other`'s latest non-contact time forward.
    pub fn instant_contact<P: SampleProvider + ?Sized>(
        &mut self,
        src: &mut P,
        stats: &mut QueryStats,
        o: ObjectId,
        other: ObjectId,
        w: GridTime,
    ) -> Result<bool, QueryError> {
        stats.instant_contact_calls += 1;
        if let Some(hit) = self.cache.get(o, other, w) {
            return Ok(hit);
        }
        stats.instant_contact_evaluations += 1;
        let a = src.sample_set(o, w, stats)?;
        let b = src.sample_set(other, w, stats)?;
        let (delta, eta) = (self.params.delta, self.params.eta);
        let d = match self.mode {
            DecisionMode::Sequential => sequential_decision(src.graph(), &a, &b, delta, eta),
            DecisionMode::Constrained => constrained_decision(src.graph(), &a, &b, delta, eta),
        };
        stats.pair_distance_evals += d.pair_evals;
        if !d.contact {
            self.cache.note_non_contact(other, w);
        }
        self.cache.insert(o, other, w, d.contact);
        Ok(d.contact)
    }

    /// Whether the objects are in instant contact at all of `w, w+1, ..., w+k-1`.
    pub fn is_close_contact<P: SampleProvider + ?Sized>(
        &mut self,
        src: &mut P,
        stats: &mut QueryStats,
        o: ObjectId,
        other: ObjectId,
        w: GridTime,
    ) -> Result<bool, QueryError> {
        for i in 0..i64::from(self.params.k) {
            if !self.instant_contact(src, stats, o, other, w.offset(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
