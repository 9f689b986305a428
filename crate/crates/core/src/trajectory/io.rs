//! Trajectory files: CSV with header `object_id,x,y,floor,t,et`, one record per line.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::grid::SamplingGrid;
use super::store::{PositioningRecord, StoreError, TrajectoryStore};
use crate::geometry::Location;
use crate::ids::ObjectId;

const EXPIRY_EPS: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum TrajectoryFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: et - t = {got}, expected {expected}")]
    Expiry { line: u64, got: f64, expected: f64 },
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// How the loader treats `et - t`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ExpiryCheck {
    /// Any `t <= et`.
    #[default]
    Lenient,
    /// `et - t` must equal the given expiry.
    Strict(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Row {
    object_id: u32,
    x: f64,
    y: f64,
    floor: i32,
    t: f64,
    et: f64,
}

/// Reads records from CSV text and ingests them into an unsplit store.
pub fn parse_trajectories(
    reader: impl Read,
    grid: SamplingGrid,
    check: ExpiryCheck,
) -> Result<TrajectoryStore, TrajectoryFileError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut records = Vec::new();
    for row in rdr.deserialize::<Row>() {
        let row = row.map_err(|e| TrajectoryFileError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = records.len() as u64 + 2;
        if !(row.t <= row.et) {
            return Err(TrajectoryFileError::Parse {
                line,
                message: format!("t = {} is after et = {}", row.t, row.et),
            });
        }
        if let ExpiryCheck::Strict(expected) = check {
            let got = row.et - row.t;
            if (got - expected).abs() > EXPIRY_EPS {
                return Err(TrajectoryFileError::Expiry { line, got, expected });
            }
        }
        records.push((
            ObjectId(row.object_id),
            PositioningRecord {
                location: Location::new(row.x, row.y, row.floor),
                t: row.t,
                et: row.et,
            },
        ));
    }
    Ok(TrajectoryStore::ingest(grid, records)?)
}

pub fn load_trajectories(
    path: impl AsRef<Path>,
    grid: SamplingGrid,
    check: ExpiryCheck,
) -> Result<TrajectoryStore, TrajectoryFileError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| TrajectoryFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_trajectories(std::io::BufReader::new(file), grid, check)
}

/// Writes records with a header row, in iteration order.
pub fn write_trajectories<'a>(
    writer: impl Write,
    records: impl IntoIterator<Item = (ObjectId, &'a PositioningRecord)>,
) -> Result<(), TrajectoryFileError> {
    let mut w = csv::Writer::from_writer(writer);
    let to_err = |e: csv::Error| TrajectoryFileError::Parse {
        line: 0,
        message: e.to_string(),
    };
    for (o, r) in records {
        w.serialize(Row {
            object_id: o.0,
            x: r.location.x,
            y: r.location.y,
            floor: r.location.floor,
            t: r.t,
            et: r.et,
        })
        .map_err(to_err)?;
    }
    w.flush().map_err(|source| TrajectoryFileError::Io {
        path: String::from("<writer>"),
        source,
    })
}

impl TrajectoryStore {
    /// Every record as `(object, record)`, objects ascending.
    pub fn all_records(&self) -> impl Iterator<Item = (ObjectId, &PositioningRecord)> + '_ {
        self.object_ids().iter().flat_map(move |&o| {
            self.records(o)
                .expect("listed object exists")
                .map(move |r| (o, r))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "object_id,x,y,floor,t,et\n1,2.0,3.0,0,10,15\n1,2.5,3.0,0,20,25\n2,8,8,0,10,15\n";

    #[test]
    fn round_trip() {
        let s = parse_trajectories(TEXT.as_bytes(), SamplingGrid::default(), ExpiryCheck::Strict(5.0)).unwrap();
        assert_eq!(s.object_ids(), &[ObjectId(1), ObjectId(2)]);
        let mut buf = Vec::new();
        write_trajectories(&mut buf, s.all_records()).unwrap();
        let again = parse_trajectories(buf.as_slice(), SamplingGrid::default(), ExpiryCheck::Lenient).unwrap();
        let a: Vec<_> = s.all_records().map(|(o, r)| (o, *r)).collect();
        let b: Vec<_> = again.all_records().map(|(o, r)| (o, *r)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn strict_expiry_and_parse_errors() {
        let bad = TEXT.replace("20,25", "20,27");
        let err = parse_trajectories(bad.as_bytes(), SamplingGrid::default(), ExpiryCheck::Strict(5.0)).unwrap_err();
        assert!(matches!(err, TrajectoryFileError::Expiry { line: 3, .. }), "{err}");
        assert!(parse_trajectories(bad.as_bytes(), SamplingGrid::default(), ExpiryCheck::Lenient).is_ok());

        let bad = TEXT.replace("2,8,8", "2,eight,8");
        let err = parse_trajectories(bad.as_bytes(), SamplingGrid::default(), ExpiryCheck::Lenient).unwrap_err();
        assert!(matches!(err, TrajectoryFileError::Parse { line: 4, .. }), "{err}");
    }
}
