use std::collections::HashMap;

use thiserror::Error;

use super::grid::{GridTime, SamplingGrid};
use super::sample::SampleSet;
use crate::geometry::Location;
use crate::ids::ObjectId;
use crate::indoor::{IndoorGraph, ModelError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StoreError {
    #[error("unknown object {0}")]
    UnknownObject(ObjectId),
    #[error("object {object}: record {index} has t > et or non-finite times")]
    InvalidRecord { object: ObjectId, index: usize },
    #[error("object {object}: record {index} overlaps its successor (et >= next t)")]
    Overlap { object: ObjectId, index: usize },
    #[error("object {object}: time {t} is out of lifespan")]
    OutOfLifespan { object: ObjectId, t: f64 },
    #[error("object {object}: time {t} is not covered by a positioning record")]
    NotOriginal { object: ObjectId, t: f64 },
    #[error("split parameter k' must be at least 2, got {0}")]
    BadSplitParameter(u32),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Location `location` reported at `t`, valid until `et`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositioningRecord {
    pub location: Location,
    pub t: f64,
    pub et: f64,
}

/// Time-ordered records of one object, or of one piece of it after splitting.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTrajectory {
    pub object: ObjectId,
    pub piece: u32,
    pub records: Vec<PositioningRecord>,
}

impl RawTrajectory {
    pub fn start(&self) -> f64 {
        self.records[0].t
    }

    pub fn end(&self) -> f64 {
        self.records[self.records.len() - 1].et
    }

    /// Contextual lookup for a time within `[start, end]`.
    pub fn contextual(&self, t: f64) -> Contextual<'_> {
        let idx = self.records.partition_point(|r| r.et < t);
        let rec = &self.records[idx];
        if rec.t <= t {
            Contextual::Original(rec)
        } else {
            Contextual::Between {
                prev: &self.records[idx - 1],
                next: rec,
            }
        }
    }
}

/// Result of a contextual-record lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contextual<'a> {
    /// The time is inside `[t, et]` of this record.
    Original(&'a PositioningRecord),
    /// The closest records before and after the time.
    Between {
        prev: &'a PositioningRecord,
        next: &'a PositioningRecord,
    },
}

/// Raw trajectories keyed by object, each split into time-disjoint pieces.
#[derive(Debug, Clone)]
pub struct TrajectoryStore {
    grid: SamplingGrid,
    objects: HashMap<ObjectId, Vec<RawTrajectory>>,
    ids: Vec<ObjectId>,
    split_with: Option<u32>,
}

impl TrajectoryStore {
    /// Groups records by object, sorts them by report time and checks `t <= et < next t`.
    pub fn ingest(
        grid: SamplingGrid,
        records: impl IntoIterator<Item = (ObjectId, PositioningRecord)>,
    ) -> Result<Self, StoreError> {
        let mut by_object: HashMap<ObjectId, Vec<PositioningRecord>> = HashMap::new();
        for (o, r) in records {
            by_object.entry(o).or_default().push(r);
        }
        let mut objects = HashMap::with_capacity(by_object.len());
        for (object, mut recs) in by_object {
            recs.sort_by(|a, b| a.t.total_cmp(&b.t));
            for (index, r) in recs.iter().enumerate() {
                if !(r.t.is_finite() && r.et.is_finite() && r.t <= r.et) {
                    return Err(StoreError::InvalidRecord { object, index });
                }
            }
            for (index, w) in recs.windows(2).enumerate() {
                if w[0].et >= w[1].t {
                    return Err(StoreError::Overlap { object, index });
                }
            }
            objects.insert(
                object,
                vec![RawTrajectory {
                    object,
                    piece: 0,
                    records: recs,
                }],
            );
        }
        let mut ids: Vec<ObjectId> = objects.keys().copied().collect();
        ids.sort();
        Ok(TrajectoryStore {
            grid,
            objects,
            ids,
            split_with: None,
        })
    }

    pub fn grid(&self) -> SamplingGrid {
        self.grid
    }

    /// Object ids, ascending.
    pub fn object_ids(&self) -> &[ObjectId] {
        &self.ids
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// The k' the store was split with, if any.
    pub fn split_parameter(&self) -> Option<u32> {
        self.split_with
    }

    pub fn pieces(&self, o: ObjectId) -> Result<&[RawTrajectory], StoreError> {
        self.objects
            .get(&o)
            .map(Vec::as_slice)
            .ok_or(StoreError::UnknownObject(o))
    }

    /// All records of `o` in time order, across pieces.
    pub fn records(&self, o: ObjectId) -> Result<impl Iterator<Item = &PositioningRecord>, StoreError> {
        Ok(self.pieces(o)?.iter().flat_map(|p| p.records.iter()))
    }

    pub fn record_count(&self) -> usize {
        self.objects.values().flatten().map(|p| p.records.len()).sum()
    }

    pub fn piece_count(&self) -> usize {
        self.objects.values().map(Vec::len).sum()
    }

    /// First report time and last expiry time of `o`.
    pub fn lifespan(&self, o: ObjectId) -> Result<(f64, f64), StoreError> {
        let pieces = self.pieces(o)?;
        Ok((pieces[0].start(), pieces[pieces.len() - 1].end()))
    }

    fn piece_at(&self, o: ObjectId, t: f64) -> Result<&RawTrajectory, StoreError> {
        let pieces = self.pieces(o)?;
        let idx = pieces.partition_point(|p| p.start() <= t);
        match idx.checked_sub(1).map(|i| &pieces[i]) {
            Some(p) if t <= p.end() => Ok(p),
            _ => Err(StoreError::OutOfLifespan { object: o, t }),
        }
    }

    /// The record covering `t`, or the records immediately before and after it.
    pub fn contextual_records(&self, o: ObjectId, t: f64) -> Result<Contextual<'_>, StoreError> {
        Ok(self.piece_at(o, t)?.contextual(t))
    }

    /// Contextual lookup at a grid time; `None` when the time is outside every piece.
    pub fn contextual_at(&self, o: ObjectId, w: GridTime) -> Result<Option<Contextual<'_>>, StoreError> {
        match self.contextual_records(o, self.grid.time(w)) {
            Ok(c) => Ok(Some(c)),
            Err(StoreError::OutOfLifespan { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// The certain sample of `o` at `t`, which must be covered by a record.
    pub fn original_sample(&self, graph: &IndoorGraph, o: ObjectId, t: f64) -> Result<SampleSet, StoreError> {
        match self.contextual_records(o, t)? {
            Contextual::Original(r) => Ok(SampleSet::original(graph, r.location)?),
            Contextual::Between { .. } => Err(StoreError::NotOriginal { object: o, t }),
        }
    }

    /// Splits every trajectory so that no piece has `kprime` consecutive grid times
    /// without an original sample.
    ///
    /// A piece ends at the record giving the last original sample before such a gap and the
    /// next piece starts at the record giving the next original sample. Records that cover no
    /// grid time and fall outside a piece become single-record pieces, so no record is lost.
    pub fn split(&self, kprime: u32) -> Result<TrajectoryStore, StoreError> {
        if kprime < 2 {
            return Err(StoreError::BadSplitParameter(kprime));
        }
        let mut objects = HashMap::with_capacity(self.objects.len());
        for (&object, pieces) in &self.objects {
            let records = pieces.iter().flat_map(|p| p.records.iter().copied());
            objects.insert(object, split_records(self.grid, object, records, kprime));
        }
        Ok(TrajectoryStore {
            grid: self.grid,
            objects,
            ids: self.ids.clone(),
            split_with: Some(kprime),
        })
    }
}

fn split_records(
    grid: SamplingGrid,
    object: ObjectId,
    records: impl Iterator<Item = PositioningRecord>,
    kprime: u32,
) -> Vec<RawTrajectory> {
    let mut out: Vec<Vec<PositioningRecord>> = Vec::new();
    let mut current: Vec<PositioningRecord> = Vec::new();
    let mut pending: Vec<PositioningRecord> = Vec::new();
    let mut last_covered: Option<GridTime> = None;
    for r in records {
        match grid.span(r.t, r.et) {
            None if current.is_empty() => out.push(vec![r]),
            None => pending.push(r),
            Some((first, last)) => {
                if let Some(prev) = last_covered {
                    let uncovered = first.0 - prev.0 - 1;
                    if uncovered >= i64::from(kprime) {
                        out.push(std::mem::take(&mut current));
                        out.extend(pending.drain(..).map(|p| vec![p]));
                    }
                }
                current.append(&mut pending);
                current.push(r);
                last_covered = Some(last);
            }
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out.extend(pending.into_iter().map(|p| vec![p]));
    out.into_iter()
        .enumerate()
        .map(|(i, records)| RawTrajectory {
            object,
            piece: i as u32,
            records,
        })
        .collect()
}
