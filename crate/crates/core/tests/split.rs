use icq_testkit::{check_split, random_store, room_grid, three_rooms};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn split_bounds_unseen_runs(seed in any::<u64>(), objects in 1u32..8, report in 0.05f64..1.0, kprime in 2u32..10) {
        let graph = if seed % 2 == 0 { three_rooms() } else { room_grid(3, 2, 6.0) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let store = random_store(&graph, objects, 80, report, &mut rng);
        let split = store.split(kprime).unwrap();
        prop_assert_eq!(check_split(&store, &split, kprime), Vec::<String>::new());
        prop_assert_eq!(split.record_count(), store.record_count());
        prop_assert!(split.piece_count() >= store.piece_count());
        prop_assert_eq!(split.split_parameter(), Some(kprime));
    }
}

#[test]
fn checker_flags_unsplit_gaps() {
    let graph = three_rooms();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let store = random_store(&graph, 6, 80, 0.15, &mut rng);
    assert!(!check_split(&store, &store, 2).is_empty());
    assert!(store.split(1).is_err());
}
