//! Indoor space model: partitions, doors, distances and per-query object tables.

mod floorplan;
mod model;
mod tables;

pub use floorplan::{
    load_floorplan, parse_floorplan, write_floorplan, DoorRecord, FloorRecord, FloorplanError, FloorplanFile,
    PartitionRecord, StaircaseRecord,
};
pub use model::{
    Door, DoorMatrix, DoorSpec, Edge, Entity, Floor, IndoorGraph, ModelError, Partition, PartitionSpec, Staircase,
    StaircaseSpec,
};
pub use tables::{ObjectTables, PartitionIndex};
