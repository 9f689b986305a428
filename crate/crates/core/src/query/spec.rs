use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::contact::ContactParams;
use crate::error::QueryError;
use crate::ids::ObjectId;

/// Query processing method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Constrained search over indoor-derived samples.
    Constrained,
    /// Sequential search over indoor-derived samples.
    Sequential,
    /// Constrained search over samples derived from free-space circles.
    Euclidean,
    /// Constrained search over original samples only.
    Raw,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Constrained, Method::Sequential, Method::Euclidean, Method::Raw];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Constrained => "constrained",
            Method::Sequential => "sequential",
            Method::Euclidean => "euclidean",
            Method::Raw => "raw",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method {s:?} (expected constrained, sequential, euclidean or raw)"))
    }
}

/// One contact query: objects in close contact with `query_object` during `[t_start, t_end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuerySpec {
    pub query_object: ObjectId,
    pub t_start: f64,
    pub t_end: f64,
    pub params: ContactParams,
    pub method: Method,
}

impl QuerySpec {
    pub fn validate(&self) -> Result<(), QueryError> {
        if !(self.t_start <= self.t_end) {
            return Err(QueryError::InvalidSpec(format!(
                "interval start {} is after end {}",
                self.t_start, self.t_end
            )));
        }
        self.params.validate().map_err(QueryError::InvalidSpec)
    }
}
