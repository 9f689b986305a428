//! Query files (JSON list of specs) and result tables (tab-separated).
//!
//! ```json
//! [
//!   {"id": "q1", "object": 7, "t_start": 0, "t_end": 7200, "delta": 2.0, "eta": 0.5, "k": 18, "method": "constrained"}
//! ]
//! ```
//!
//! `method` may be omitted to let the caller choose.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::result::QueryResult;
use super::spec::{Method, QuerySpec};
use crate::contact::ContactParams;
use crate::ids::ObjectId;

#[derive(Debug, Error)]
pub enum QueryFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("query {id}: {message}")]
    Invalid { id: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryEntry {
    pub id: String,
    pub object: u32,
    pub t_start: f64,
    pub t_end: f64,
    pub delta: f64,
    pub eta: f64,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
}

impl QueryEntry {
    pub fn from_spec(id: impl Into<String>, spec: &QuerySpec) -> Self {
        QueryEntry {
            id: id.into(),
            object: spec.query_object.0,
            t_start: spec.t_start,
            t_end: spec.t_end,
            delta: spec.params.delta,
            eta: spec.params.eta,
            k: spec.params.k,
            method: Some(spec.method),
        }
    }

    /// The query, using `fallback` when the entry names no method.
    pub fn spec(&self, fallback: Method) -> Result<QuerySpec, QueryFileError> {
        let spec = QuerySpec {
            query_object: ObjectId(self.object),
            t_start: self.t_start,
            t_end: self.t_end,
            params: ContactParams {
                delta: self.delta,
                eta: self.eta,
                k: self.k,
            },
            method: self.method.unwrap_or(fallback),
        };
        spec.validate().map_err(|e| QueryFileError::Invalid {
            id: self.id.clone(),
            message: e.to_string(),
        })?;
        Ok(spec)
    }
}

pub fn parse_queries(text: &str) -> Result<Vec<QueryEntry>, QueryFileError> {
    serde_json::from_str(text).map_err(|e| QueryFileError::Syntax {
        line: e.line(),
        message: e.to_string(),
    })
}

pub fn load_queries(path: impl AsRef<Path>) -> Result<Vec<QueryEntry>, QueryFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| QueryFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_queries(&text)
}

/// One element per line.
pub fn queries_to_json(entries: &[QueryEntry]) -> String {
    let mut out = String::from("[\n");
    for (i, e) in entries.iter().enumerate() {
        out.push_str("  ");
        out.push_str(&serde_json::to_string(e).expect("query entries serialize"));
        out.push_str(if i + 1 < entries.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

pub const RESULT_HEADER: &str = "query_id\tmethod\tcontacts\twall_ms\tinstant_contact_calls\tinstant_contact_evaluations\tderivations\tpair_distance_evals\tcandidates_examined\tskipped_windows\tpeak_bytes";

/// Writes the header and one row per result; contacts are comma-separated object ids.
pub fn write_results<'a>(
    mut w: impl Write,
    rows: impl IntoIterator<Item = (&'a str, Method, &'a QueryResult)>,
) -> std::io::Result<()> {
    writeln!(w, "{RESULT_HEADER}")?;
    for (id, method, r) in rows {
        let contacts: Vec<String> = r.contacts.iter().map(|o| o.0.to_string()).collect();
        let s = &r.stats;
        writeln!(
            w,
            "{id}\t{method}\t{}\t{:.3}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            contacts.join(","),
            r.wall.as_secs_f64() * 1e3,
            s.instant_contact_calls,
            s.instant_contact_evaluations,
            s.derivations,
            s.pair_distance_evals,
            s.candidates_examined,
            s.skipped_windows,
            s.peak_bytes
        )?;
    }
    Ok(())
}
