use icq_core::contact::{constrained_decision, contact_probability, sequential_decision, PROB_EPS};
use icq_core::IndoorGraph;
use icq_testkit::{probability_by_definition, random_location, random_sample_set, room_grid, three_rooms};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graphs() -> [IndoorGraph; 2] {
    [three_rooms(), room_grid(3, 2, 6.0)]
}

fn pair(graph: &IndoorGraph, seed: u64) -> (icq_core::SampleSet, icq_core::SampleSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let near = random_location(graph, &mut rng);
    (
        random_sample_set(graph, near, 40, &mut rng),
        random_sample_set(graph, near, 40, &mut rng),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pruned_decision_matches_full_scan(seed in any::<u64>(), delta in 0.5f64..6.0, eta in 0.05f64..0.95) {
        for graph in &graphs() {
            let (a, b) = pair(graph, seed);
            let c = constrained_decision(graph, &a, &b, delta, eta);
            let s = sequential_decision(graph, &a, &b, delta, eta);
            prop_assert_eq!(c.contact, s.contact);
            prop_assert!(c.pair_evals <= s.pair_evals);
            let p = probability_by_definition(graph, &a, &b, delta);
            prop_assert_eq!(s.contact, p >= eta - PROB_EPS);
        }
    }

    #[test]
    fn probability_is_symmetric_and_bounded(seed in any::<u64>(), delta in 0.5f64..6.0) {
        for graph in &graphs() {
            let (a, b) = pair(graph, seed);
            let p = contact_probability(graph, &a, &b, delta);
            let q = contact_probability(graph, &b, &a, delta);
            prop_assert!((p - q).abs() < 1e-12);
            prop_assert!((-1e-12..=1.0 + 1e-9).contains(&p));
            prop_assert!((p - probability_by_definition(graph, &a, &b, delta)).abs() < 1e-12);
        }
    }

    #[test]
    fn probability_grows_with_distance_constraint(seed in any::<u64>(), d1 in 0.1f64..5.0, extra in 0.0f64..5.0) {
        for graph in &graphs() {
            let (a, b) = pair(graph, seed);
            let p1 = contact_probability(graph, &a, &b, d1);
            let p2 = contact_probability(graph, &a, &b, d1 + extra);
            prop_assert!(p1 <= p2 + 1e-12);
        }
    }
}

#[test]
fn empty_sets_never_touch() {
    let graph = three_rooms();
    let (a, _) = pair(&graph, 7);
    let empty = icq_core::SampleSet::empty(icq_core::trajectory::SampleKind::Derived);
    assert_eq!(contact_probability(&graph, &a, &empty, 100.0), 0.0);
    assert!(!constrained_decision(&graph, &a, &empty, 100.0, 0.01).contact);
    assert!(!sequential_decision(&graph, &empty, &a, 100.0, 0.01).contact);
}
