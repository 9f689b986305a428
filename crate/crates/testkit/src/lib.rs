//! Slow, straightforward reference implementations used to check the engine.

mod fixtures;
mod grid;
mod oracle;
mod random;
mod split;

pub use fixtures::{room_grid, three_rooms, worked_example, WorkedExample};
pub use grid::GridDistance;
pub use oracle::{exhaustive_contacts, probability_by_definition, static_contacts, window_sets};
pub use random::{random_location, random_sample_set, random_store};
pub use split::check_split;
