//! Indoor uncertainty regions and lattice-sample derivation at unseen sampling times.

mod derive;
mod lattice;
mod region;

pub use derive::{Deriver, DeriveError, RegionModel, DEFAULT_LL, DEFAULT_V_MAX};
pub use lattice::{lattice_points, Lattice, LatticeIndex};
pub use region::{find_iur, Portion, PortionCenter, UncertaintyRegion};
