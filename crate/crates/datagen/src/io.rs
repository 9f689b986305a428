use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::{Path, PathBuf};

use icq_core::contact::ContactParams;
use icq_core::indoor::write_floorplan;
use icq_core::query::queries_to_json;
use icq_core::trajectory::write_trajectories;
use icq_core::ObjectId;

use crate::{Dataset, GenError};

/// Paths of the files written by [`write_dataset`].
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFiles {
    pub config: PathBuf,
    pub floorplan: PathBuf,
    pub trajectories: PathBuf,
    pub queries: PathBuf,
    pub ground_truth: PathBuf,
}

impl DatasetFiles {
    pub fn in_dir(dir: &Path) -> Self {
        DatasetFiles {
            config: dir.join("config.json"),
            floorplan: dir.join("floorplan.json"),
            trajectories: dir.join("trajectories.csv"),
            queries: dir.join("queries.json"),
            ground_truth: dir.join("ground_truth.tsv"),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> GenError + '_ {
    move |source| GenError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn output_err(path: &Path, e: impl ToString) -> GenError {
    GenError::Output {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Writes config, floorplan, trajectories, queries and ground truth for `params` into `dir`.
pub fn write_dataset(ds: &Dataset, dir: &Path, params: ContactParams) -> Result<DatasetFiles, GenError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let files = DatasetFiles::in_dir(dir);

    let config = serde_json::to_string_pretty(&ds.config).map_err(|e| output_err(&files.config, e))?;
    std::fs::write(&files.config, config + "\n").map_err(io_err(&files.config))?;

    write_floorplan(&ds.graph, &files.floorplan).map_err(|e| output_err(&files.floorplan, e))?;

    let file = std::fs::File::create(&files.trajectories).map_err(io_err(&files.trajectories))?;
    write_trajectories(std::io::BufWriter::new(file), ds.records()).map_err(|e| output_err(&files.trajectories, e))?;

    let queries = queries_to_json(&ds.query_entries(params));
    std::fs::write(&files.queries, queries).map_err(io_err(&files.queries))?;

    let file = std::fs::File::create(&files.ground_truth).map_err(io_err(&files.ground_truth))?;
    write_ground_truth(std::io::BufWriter::new(file), &ds.ground_truth(params.delta, params.k))
        .map_err(io_err(&files.ground_truth))?;
    Ok(files)
}

const HEADER: &str = "query_id\tcontacts";

/// Tab-separated: query id, then comma-separated contact ids (possibly empty).
pub fn write_ground_truth(mut w: impl Write, truth: &BTreeMap<String, BTreeSet<ObjectId>>) -> std::io::Result<()> {
    writeln!(w, "{HEADER}")?;
    for (id, contacts) in truth {
        let ids: Vec<String> = contacts.iter().map(|o| o.0.to_string()).collect();
        writeln!(w, "{id}\t{}", ids.join(","))?;
    }
    w.flush()
}

pub fn parse_ground_truth(text: &str) -> Result<BTreeMap<String, BTreeSet<ObjectId>>, GenError> {
    let mut out = BTreeMap::new();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == HEADER => {}
        _ => {
            return Err(GenError::GroundTruth {
                line: 1,
                message: format!("expected header {HEADER:?}"),
            })
        }
    }
    for (i, line) in lines {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| GenError::GroundTruth { line: line_no, message };
        let (id, ids) = line
            .split_once('\t')
            .ok_or_else(|| err("expected two tab-separated fields".into()))?;
        let mut set = BTreeSet::new();
        for tok in ids.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: u32 = tok.parse().map_err(|_| err(format!("bad object id {tok:?}")))?;
            set.insert(ObjectId(v));
        }
        if out.insert(id.to_string(), set).is_some() {
            return Err(err(format!("duplicate query id {id:?}")));
        }
    }
    Ok(out)
}

pub fn load_ground_truth(path: impl AsRef<Path>) -> Result<BTreeMap<String, BTreeSet<ObjectId>>, GenError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_ground_truth(&text)
}
