use thiserror::Error;

use crate::ids::ObjectId;
use crate::indoor::ModelError;
use crate::trajectory::{SampleError, StoreError};
use crate::uncertainty::DeriveError;

/// Errors raised while answering a query.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QueryError {
    #[error("unknown query object {0}")]
    UnknownObject(ObjectId),
    #[error("invalid query: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error(transparent)]
    Sample(#[from] SampleError),
}
