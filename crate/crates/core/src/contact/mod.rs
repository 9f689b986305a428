//! Contact probability, instant contact decisions and close contact over `k` sampling times.

mod evaluator;
mod probability;

pub use evaluator::{ContactCache, ContactEvaluator, DecisionMode, SampleProvider};
pub use probability::{
    constrained_decision, contact_probability, sample_distance, sequential_decision, ContactParams, Decision,
    PROB_EPS,
};
