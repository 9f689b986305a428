use std::collections::HashMap;
use std::mem::size_of;
use std::sync::Arc;

use crate::ids::{ObjectId, PartitionId};
use crate::trajectory::{GridTime, Sample, SampleSet};

/// Objects listed per (partition, sampling time).
#[derive(Debug, Clone, Default)]
pub struct PartitionIndex {
    lists: HashMap<(PartitionId, GridTime), Vec<ObjectId>>,
    entries: usize,
}

impl PartitionIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `o` under `(v, w)` unless already listed.
    pub fn insert(&mut self, v: PartitionId, w: GridTime, o: ObjectId) {
        let list = self.lists.entry((v, w)).or_default();
        if !list.contains(&o) {
            list.push(o);
            self.entries += 1;
        }
    }

    pub fn remove(&mut self, v: PartitionId, w: GridTime, o: ObjectId) {
        if let Some(list) = self.lists.get_mut(&(v, w)) {
            if let Some(i) = list.iter().position(|&x| x == o) {
                list.remove(i);
                self.entries -= 1;
            }
        }
    }

    /// Objects under `(v, w)`, in insertion order.
    pub fn objects(&self, v: PartitionId, w: GridTime) -> &[ObjectId] {
        self.lists.get(&(v, w)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (PartitionId, GridTime, ObjectId)> + '_ {
        self.lists
            .iter()
            .flat_map(|(&(v, w), list)| list.iter().map(move |&o| (v, w, o)))
    }

    pub fn len(&self) -> usize {
        self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries == 0
    }

    pub fn approx_bytes(&self) -> usize {
        self.lists.len() * size_of::<((PartitionId, GridTime), Vec<ObjectId>)>()
            + self.entries * size_of::<ObjectId>()
    }
}

/// Sample sets materialized during one query, with the per-partition object tables
/// `OT^v[t]` over them.
#[derive(Debug, Clone, Default)]
pub struct ObjectTables {
    samples: HashMap<(ObjectId, GridTime), Arc<SampleSet>>,
    index: PartitionIndex,
    sample_count: usize,
}

impl ObjectTables {
    pub fn new() -> Self {
        Self::default()
    }

    /// Stores `set` as `o`'s samples at `w` and lists `o` under every partition hosting one
    /// of them. A previous registration at `w` is replaced.
    pub fn register_sample(&mut self, o: ObjectId, w: GridTime, set: Arc<SampleSet>) {
        if let Some(old) = self.samples.remove(&(o, w)) {
            for v in old.partitions() {
                self.index.remove(v, w, o);
            }
            self.sample_count -= old.len();
        }
        for v in set.partitions() {
            self.index.insert(v, w, o);
        }
        self.sample_count += set.len();
        self.samples.insert((o, w), set);
    }

    pub fn sample_set(&self, o: ObjectId, w: GridTime) -> Option<&Arc<SampleSet>> {
        self.samples.get(&(o, w))
    }

    /// `OT^v[w]`.
    pub fn objects_at(&self, v: PartitionId, w: GridTime) -> &[ObjectId] {
        self.index.objects(v, w)
    }

    pub fn index(&self) -> &PartitionIndex {
        &self.index
    }

    pub fn entries(&self) -> impl Iterator<Item = (ObjectId, GridTime, &Arc<SampleSet>)> + '_ {
        self.samples.iter().map(|(&(o, w), s)| (o, w, s))
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Rough size of the stored sample sets and index.
    pub fn approx_bytes(&self) -> usize {
        self.samples.len() * (size_of::<((ObjectId, GridTime), Arc<SampleSet>)>() + size_of::<SampleSet>())
            + self.sample_count * size_of::<Sample>()
            + self.index.approx_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Location;
    use crate::trajectory::SampleKind;

    fn set(parts: &[u32]) -> Arc<SampleSet> {
        let pts = parts
            .iter()
            .map(|&p| (Location::new(p as f64, 0.0, 0), PartitionId(p)))
            .collect();
        Arc::new(SampleSet::uniform(SampleKind::Derived, pts))
    }

    #[test]
    fn registers_under_hosting_partitions() {
        let mut t = ObjectTables::new();
        let w = GridTime(3);
        t.register_sample(ObjectId(1), w, set(&[1]));
        t.register_sample(ObjectId(2), w, set(&[1, 3, 3]));
        assert_eq!(t.objects_at(PartitionId(1), w), &[ObjectId(1), ObjectId(2)]);
        assert_eq!(t.objects_at(PartitionId(3), w), &[ObjectId(2)]);
        assert!(t.objects_at(PartitionId(2), w).is_empty());
        assert!(t.objects_at(PartitionId(1), GridTime(4)).is_empty());
    }

    #[test]
    fn reregistration_replaces() {
        let mut t = ObjectTables::new();
        let w = GridTime(0);
        t.register_sample(ObjectId(7), w, set(&[1, 3]));
        t.register_sample(ObjectId(7), w, set(&[2]));
        t.register_sample(ObjectId(7), w, set(&[2]));
        assert!(t.objects_at(PartitionId(1), w).is_empty());
        assert!(t.objects_at(PartitionId(3), w).is_empty());
        assert_eq!(t.objects_at(PartitionId(2), w), &[ObjectId(7)]);
        assert_eq!(t.len(), 1);
        assert_eq!(t.index().len(), 1);
    }
}
