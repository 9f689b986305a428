//! Query processing: preparation of sample tables, constrained and sequential search.

mod engine;
mod io;
mod result;
mod search;
mod spec;
mod world;

pub use engine::Engine;
pub use io::{load_queries, parse_queries, queries_to_json, write_results, QueryEntry, QueryFileError, RESULT_HEADER};
pub use result::{QueryResult, QueryStats};
pub use search::{c_search, s_search, SearchWorld};
pub use spec::{Method, QuerySpec};
pub use world::StaticWorld;
