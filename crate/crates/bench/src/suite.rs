use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Duration;

use icq_core::{ContactParams, Engine, LatticeIndex, Method, ObjectId, QuerySpec, QueryStats};
use icq_datagen::{Dataset, GenError, SimConfig};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{compute_metrics, mean_metrics, Metrics};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("sweep config: {0}")]
    Config(String),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Store(#[from] icq_core::trajectory::StoreError),
    #[error(transparent)]
    Model(#[from] icq_core::ModelError),
    #[error("query {id}: {source}")]
    Query {
        id: String,
        #[source]
        source: icq_core::QueryError,
    },
}

/// A swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    QueryInterval,
    Delta,
    Eta,
    K,
    Ll,
    Objects,
}

impl Dimension {
    pub const ALL: [Dimension; 6] = [
        Dimension::QueryInterval,
        Dimension::Delta,
        Dimension::Eta,
        Dimension::K,
        Dimension::Ll,
        Dimension::Objects,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Dimension::QueryInterval => "query_interval",
            Dimension::Delta => "delta",
            Dimension::Eta => "eta",
            Dimension::K => "k",
            Dimension::Ll => "ll",
            Dimension::Objects => "objects",
        }
    }
}

/// Parameter grids and defaults. One dimension is varied at a time, the others stay at
/// their defaults. Query intervals are in seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub query_interval: Vec<f64>,
    pub delta: Vec<f64>,
    pub eta: Vec<f64>,
    pub k: Vec<u32>,
    pub ll: Vec<f64>,
    pub objects: Vec<u32>,
    pub defaults: ContactParams,
    pub default_ll: f64,
    pub dimensions: Vec<Dimension>,
    pub methods: Vec<Method>,
    /// Timed runs per query; results come from the first.
    pub repetitions: u32,
    pub instances: u32,
    pub kprime: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            query_interval: vec![1_800.0, 3_600.0, 5_400.0, 7_200.0],
            delta: vec![1.0, 2.0, 3.0, 4.0, 5.0],
            eta: vec![0.3, 0.4, 0.5, 0.6, 0.7],
            k: vec![6, 12, 18, 24, 30, 36, 42],
            ll: vec![0.2, 0.4, 0.6, 0.8, 1.0],
            objects: vec![100, 200, 300, 400],
            defaults: ContactParams::default(),
            default_ll: icq_core::DEFAULT_LL,
            dimensions: Dimension::ALL.to_vec(),
            methods: Method::ALL.to_vec(),
            repetitions: 30,
            instances: 20,
            kprime: 6,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SuiteError> {
        let bad = |m: &str| Err(SuiteError::Config(m.to_string()));
        let positive = |v: &[f64]| !v.is_empty() && v.iter().all(|x| *x > 0.0 && x.is_finite());
        for (name, v) in [
            ("query_interval", &self.query_interval),
            ("delta", &self.delta),
            ("eta", &self.eta),
            ("ll", &self.ll),
        ] {
            if !positive(v) {
                return bad(&format!("{name} needs at least one positive value"));
            }
        }
        if self.eta.iter().any(|&e| e > 1.0) {
            return bad("eta values must not exceed 1");
        }
        if self.k.is_empty() || self.k.contains(&0) {
            return bad("k needs at least one positive value");
        }
        if self.objects.is_empty() || self.objects.contains(&0) {
            return bad("objects needs at least one positive value");
        }
        self.defaults.validate().map_err(SuiteError::Config)?;
        if !(self.default_ll > 0.0) {
            return bad("default_ll must be positive");
        }
        if self.dimensions.is_empty() || self.methods.is_empty() {
            return bad("dimensions and methods must be non-empty");
        }
        if self.repetitions == 0 || self.instances == 0 {
            return bad("repetitions and instances must be positive");
        }
        if self.kprime < 2 {
            return bad("kprime must be at least 2");
        }
        Ok(())
    }
}

/// Aggregate outcome of one method over every query instance of a dataset.
#[derive(Debug, Clone)]
pub struct MethodSummary {
    pub method: Method,
    pub metrics: Metrics,
    /// Mean per-query wall time over all repetitions.
    pub mean_wall: Duration,
    pub mean_peak_bytes: f64,
    /// Counters summed over instances (first repetition).
    pub stats: QueryStats,
    /// Answer per instance, in instance order.
    pub results: Vec<BTreeSet<ObjectId>>,
}

/// Runs every instance of `ds` with each method and scores it against the ground truth.
pub fn evaluate(
    ds: &Dataset,
    params: ContactParams,
    ll: f64,
    kprime: u32,
    methods: &[Method],
    repetitions: u32,
) -> Result<Vec<MethodSummary>, SuiteError> {
    let store = ds.store()?.split(kprime)?;
    let lattices = LatticeIndex::new(&ds.graph, ll)?;
    let engine = Engine::new(&ds.graph, &store, &lattices).with_v_max(ds.config.v_max);
    let truth = ds.ground_truth(params.delta, params.k);
    let mut out = Vec::with_capacity(methods.len());
    for &method in methods {
        let mut stats = QueryStats::default();
        let (mut wall, mut peak, mut runs) = (Duration::ZERO, 0.0, 0u32);
        let mut scores = Vec::new();
        let mut results = Vec::new();
        for inst in &ds.instances {
            let spec = QuerySpec {
                query_object: inst.query,
                t_start: inst.t_start,
                t_end: inst.t_end,
                params,
                method,
            };
            let mut first = None;
            for _ in 0..repetitions.max(1) {
                let r = engine.process(&spec).map_err(|source| SuiteError::Query {
                    id: inst.id.clone(),
                    source,
                })?;
                wall += r.wall;
                peak += r.stats.peak_bytes as f64;
                runs += 1;
                first.get_or_insert(r);
            }
            let r = first.expect("at least one run");
            stats += r.stats;
            scores.push(compute_metrics(&r.contacts, &truth[&inst.id]));
            results.push(r.contacts);
        }
        out.push(MethodSummary {
            method,
            metrics: mean_metrics(scores),
            mean_wall: wall / runs.max(1),
            mean_peak_bytes: peak / f64::from(runs.max(1)),
            stats,
            results,
        });
    }
    Ok(out)
}

/// One line of a sweep table.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsRow {
    pub method: Method,
    pub dimension: Dimension,
    pub value: f64,
    pub query_interval: Option<f64>,
    pub delta: f64,
    pub eta: f64,
    pub k: u32,
    pub ll: f64,
    pub objects: u32,
    pub mean_wall_ms: f64,
    pub mean_peak_bytes: f64,
    pub instant_contact_calls: u64,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepTable {
    pub dimension: Dimension,
    pub rows: Vec<MetricsRow>,
}

const TABLE_HEADER: &str = "method\tvalue\tmean_wall_ms\tmean_peak_bytes\tinstant_contact_calls\trecall\tprecision\tf1";

impl SweepTable {
    pub fn to_tsv(&self) -> String {
        let mut s = format!("# {}\n{TABLE_HEADER}\n", self.dimension.as_str());
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{}\t{}\t{:.3}\t{:.0}\t{}\t{:.4}\t{:.4}\t{:.4}",
                r.method, r.value, r.mean_wall_ms, r.mean_peak_bytes, r.instant_contact_calls, r.recall, r.precision, r.f1
            );
        }
        s
    }
}

#[derive(Debug, Clone, Copy)]
struct Point {
    params: ContactParams,
    ll: f64,
    objects: u32,
    query_interval: Option<f64>,
}

/// One table per swept dimension, one row per method and grid value.
pub fn run_suite(sweep: &SweepConfig, sim: &SimConfig) -> Result<Vec<SweepTable>, SuiteError> {
    sweep.validate()?;
    let base = Point {
        params: sweep.defaults,
        ll: sweep.default_ll,
        objects: sim.objects,
        query_interval: sim.query_interval,
    };
    let mut datasets: BTreeMap<(u32, Option<u64>), Dataset> = BTreeMap::new();
    let mut tables = Vec::new();
    for &dim in &sweep.dimensions {
        let values: Vec<f64> = match dim {
            Dimension::QueryInterval => sweep.query_interval.clone(),
            Dimension::Delta => sweep.delta.clone(),
            Dimension::Eta => sweep.eta.clone(),
            Dimension::K => sweep.k.iter().map(|&k| f64::from(k)).collect(),
            Dimension::Ll => sweep.ll.clone(),
            Dimension::Objects => sweep.objects.iter().map(|&n| f64::from(n)).collect(),
        };
        let mut rows = Vec::new();
        for value in values {
            let mut p = base;
            match dim {
                Dimension::QueryInterval => p.query_interval = Some(value.min(sim.horizon)),
                Dimension::Delta => p.params.delta = value,
                Dimension::Eta => p.params.eta = value,
                Dimension::K => p.params.k = value as u32,
                Dimension::Ll => p.ll = value,
                Dimension::Objects => p.objects = value as u32,
            }
            let key = (p.objects, p.query_interval.map(f64::to_bits));
            if !datasets.contains_key(&key) {
                let cfg = SimConfig {
                    objects: p.objects,
                    query_interval: p.query_interval,
                    instances: sweep.instances.min(p.objects),
                    ..sim.clone()
                };
                log::info!("generating {} objects, interval {:?}", p.objects, p.query_interval);
                datasets.insert(key, Dataset::generate(&cfg)?);
            }
            let ds = &datasets[&key];
            for s in evaluate(ds, p.params, p.ll, sweep.kprime, &sweep.methods, sweep.repetitions)? {
                rows.push(MetricsRow {
                    method: s.method,
                    dimension: dim,
                    value,
                    query_interval: p.query_interval,
                    delta: p.params.delta,
                    eta: p.params.eta,
                    k: p.params.k,
                    ll: p.ll,
                    objects: p.objects,
                    mean_wall_ms: s.mean_wall.as_secs_f64() * 1e3,
                    mean_peak_bytes: s.mean_peak_bytes,
                    instant_contact_calls: s.stats.instant_contact_calls,
                    recall: s.metrics.recall,
                    precision: s.metrics.precision,
                    f1: s.metrics.f1,
                });
            }
        }
        tables.push(SweepTable { dimension: dim, rows });
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_single_method() {
        let sweep = SweepConfig {
            delta: vec![2.0],
            dimensions: vec![Dimension::Delta],
            methods: vec![Method::Raw],
            repetitions: 1,
            instances: 2,
            ..SweepConfig::default()
        };
        let sim = SimConfig { objects: 20, instances: 2, ..SimConfig::default() };
        let tables = run_suite(&sweep, &sim).unwrap();
        assert_eq!(tables.len(), 1);
        assert_eq!(tables[0].rows.len(), 1);
        let row = &tables[0].rows[0];
        assert!((0.0..=1.0).contains(&row.recall) && (0.0..=1.0).contains(&row.f1));
        assert!(tables[0].to_tsv().lines().count() == 3);
    }

    #[test]
    fn rejects_bad_grids() {
        for bad in [
            SweepConfig { delta: vec![], ..SweepConfig::default() },
            SweepConfig { eta: vec![1.5], ..SweepConfig::default() },
            SweepConfig { k: vec![0], ..SweepConfig::default() },
            SweepConfig { repetitions: 0, ..SweepConfig::default() },
        ] {
            assert!(matches!(bad.validate(), Err(SuiteError::Config(_))));
        }
        let parsed: SweepConfig = serde_json::from_str(r#"{"k": [6, 12], "methods": ["raw"]}"#).unwrap();
        assert_eq!(parsed.k, vec![6, 12]);
        assert_eq!(parsed.delta, SweepConfig::default().delta);
        assert!(serde_json::from_str::<SweepConfig>(r#"{"kk": [6]}"#).is_err());
    }
}
