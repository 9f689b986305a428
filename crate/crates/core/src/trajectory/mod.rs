//! Raw trajectories, the sampling grid and sample sets.

mod grid;
mod io;
mod sample;
mod store;

pub use grid::{GridTime, SamplingGrid};
pub use io::{load_trajectories, parse_trajectories, write_trajectories, ExpiryCheck, TrajectoryFileError};
pub use sample::{PartitionGroup, Sample, SampleError, SampleKind, SampleSet, MASS_EPS};
pub use store::{Contextual, PositioningRecord, RawTrajectory, StoreError, TrajectoryStore};
