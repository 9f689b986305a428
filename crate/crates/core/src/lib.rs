//! Indoor contact queries over uncertain indoor positioning data.
//!
//! Objects report positioning records with gaps. At unseen sampling times their location is
//! approximated by lattice samples inside the intersection of two indoor uncertainty regions,
//! and a query returns every object whose contact probability with the query object reaches a
//! threshold for `k` consecutive sampling times.

pub mod contact;
mod error;
pub mod geometry;
pub mod ids;
pub mod indoor;
pub mod query;
pub mod trajectory;
pub mod uncertainty;

pub use contact::ContactParams;
pub use error::QueryError;
pub use geometry::{Location, Rect, GEOM_EPS};
pub use ids::{DoorId, ObjectId, PartitionId};
pub use indoor::{IndoorGraph, ModelError};
pub use query::{Engine, Method, QueryResult, QuerySpec, QueryStats};
pub use trajectory::{GridTime, PositioningRecord, SampleSet, SamplingGrid, TrajectoryStore};
pub use uncertainty::{LatticeIndex, DEFAULT_LL, DEFAULT_V_MAX};

#[cfg(test)]
pub(crate) mod test_util;
