//! Synthetic indoor mobility data with injected close contacts.
//!
//! [`Dataset::generate`] builds a floorplan, simulates objects moving between random
//! destinations, degrades their records, and for each query instance injects copies of
//! segments of the query object's movement. Ground truth comes from the undegraded paths.
//! Everything is a pure function of the [`SimConfig`], seed included.

mod config;
mod floorplan;
mod inject;
mod io;
mod path;
mod simulate;
mod truth;

use std::collections::{BTreeMap, BTreeSet};

use icq_core::contact::ContactParams;
use icq_core::query::QueryEntry;
use icq_core::trajectory::{PositioningRecord, StoreError};
use icq_core::{IndoorGraph, ObjectId, SamplingGrid, TrajectoryStore};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use config::{ConfigError, SimConfig};
pub use floorplan::{destinations, floor_extent, generate_floorplan};
pub use inject::{inject_contacts, offset_location};
pub use io::{load_ground_truth, parse_ground_truth, write_dataset, write_ground_truth, DatasetFiles};
pub use path::{route, Knot, Leg, TruePath};
pub use simulate::{drop_records, random_point, report_times, sample_records, simulate, simulate_object, simulate_path, SimObject};
pub use truth::TruthIndex;

#[derive(Debug, Error)]
pub enum GenError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("query object {object} lives {lifespan:.0} s, shorter than the {required:.0} s segment minimum")]
    QueryTooShort {
        object: ObjectId,
        lifespan: f64,
        required: f64,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Output { path: String, message: String },
    #[error("ground truth line {line}: {message}")]
    GroundTruth { line: usize, message: String },
}

/// Random stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const INSTANCE_STREAMS: u64 = 1 << 40;

/// One query of the benchmark: the query object, its interval and the objects injected for it.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryInstance {
    pub id: String,
    pub query: ObjectId,
    pub t_start: f64,
    pub t_end: f64,
    pub injected: Vec<ObjectId>,
}

/// A generated floorplan, objects (base objects first, then injected ones) and query instances.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub config: SimConfig,
    pub graph: IndoorGraph,
    pub objects: Vec<SimObject>,
    pub instances: Vec<QueryInstance>,
}

impl Dataset {
    pub fn generate(config: &SimConfig) -> Result<Dataset, GenError> {
        config.validate()?;
        let cfg = config.clone();
        let graph = generate_floorplan(&cfg);
        let mut objects = simulate(&cfg, &graph, cfg.objects);
        let mut pick = stream_rng(cfg.seed, INSTANCE_STREAMS);
        let chosen = index::sample(&mut pick, cfg.objects as usize, cfg.instances as usize).into_vec();
        let mut instances = Vec::with_capacity(chosen.len());
        for (i, qi) in chosen.into_iter().enumerate() {
            let mut rng = stream_rng(cfg.seed, INSTANCE_STREAMS + 1 + i as u64);
            let q = &objects[qi];
            let (t_start, t_end) = match cfg.query_interval {
                None => (0.0, cfg.horizon),
                Some(len) => {
                    let lo = (q.path.start() - len).max(0.0);
                    let hi = q.path.end().min(cfg.horizon - len);
                    let s = if lo < hi { rng.gen_range(lo..=hi) } else { lo };
                    (s, s + len)
                }
            };
            let first_id = cfg.objects + 1 + i as u32 * cfg.injected_per_instance;
            let injected = inject_contacts(&graph, &cfg, q, cfg.injected_per_instance, first_id, &mut rng)?;
            instances.push(QueryInstance {
                id: format!("q{:02}", i + 1),
                query: q.id,
                t_start,
                t_end,
                injected: injected.iter().map(|o| o.id).collect(),
            });
            objects.extend(injected);
        }
        Ok(Dataset {
            config: cfg,
            graph,
            objects,
            instances,
        })
    }

    /// Sampling grid aligned with the report period.
    pub fn grid(&self) -> SamplingGrid {
        SamplingGrid::new(0.0, self.config.report_period)
    }

    pub fn object(&self, id: ObjectId) -> Option<&SimObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    /// Degraded records of every object, objects ascending.
    pub fn records(&self) -> impl Iterator<Item = (ObjectId, &PositioningRecord)> + '_ {
        self.objects.iter().flat_map(|o| o.records.iter().map(move |r| (o.id, r)))
    }

    /// Unsplit store of the degraded records.
    pub fn store(&self) -> Result<TrajectoryStore, StoreError> {
        TrajectoryStore::ingest(self.grid(), self.records().map(|(o, r)| (o, *r)))
    }

    pub fn truth_index(&self) -> TruthIndex<'_> {
        TruthIndex::new(&self.graph, self.grid(), &self.objects)
    }

    /// Ground-truth contacts per instance id for distance `delta` and duration `k`.
    pub fn ground_truth(&self, delta: f64, k: u32) -> BTreeMap<String, BTreeSet<ObjectId>> {
        let index = self.truth_index();
        self.instances
            .iter()
            .map(|q| (q.id.clone(), index.contacts(q.query, q.t_start, q.t_end, delta, k)))
            .collect()
    }

    /// One query file entry per instance with the given parameters and no method.
    pub fn query_entries(&self, params: ContactParams) -> Vec<QueryEntry> {
        self.instances
            .iter()
            .map(|q| QueryEntry {
                id: q.id.clone(),
                object: q.query.0,
                t_start: q.t_start,
                t_end: q.t_end,
                delta: params.delta,
                eta: params.eta,
                k: params.k,
                method: None,
            })
            .collect()
    }
}
