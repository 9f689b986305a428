use icq_core::uncertainty::RegionModel;
use icq_core::{ContactParams, Engine, IndoorGraph, LatticeIndex, Method, ObjectId, QuerySpec, TrajectoryStore};
use icq_testkit::{exhaustive_contacts, random_store, room_grid, three_rooms};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(o: u32, t_start: f64, t_end: f64, params: ContactParams, method: Method) -> QuerySpec {
    QuerySpec { query_object: ObjectId(o), t_start, t_end, params, method }
}

fn random_params(rng: &mut impl Rng) -> ContactParams {
    ContactParams {
        delta: rng.gen_range(1.0..5.0),
        eta: rng.gen_range(0.1..0.9),
        k: rng.gen_range(1..=5),
    }
}

/// Checks every method against the definition; returns the constrained and sequential call counts.
fn check_world(graph: &IndoorGraph, store: &TrajectoryStore, rng: &mut impl Rng) -> (u64, u64, usize) {
    let lattices = LatticeIndex::new(graph, 0.8).unwrap();
    let engine = Engine::new(graph, store, &lattices);
    let params = random_params(rng);
    let q = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=store.object_ids().len() as u32) };
    let (t0, t1) = (rng.gen_range(-20.0..60.0), rng.gen_range(60.0..140.0));
    for method in Method::ALL {
        let got = engine.process(&spec(q, t0, t1, params, method)).unwrap();
        let deriver = engine.deriver(method);
        let want = exhaustive_contacts(graph, store, deriver.as_ref(), ObjectId(q), t0, t1, params);
        assert_eq!(got.contacts, want, "{method} q={q} {params:?} [{t0}, {t1}]");
        assert!(!got.contacts.contains(&ObjectId(q)));
    }
    let c = engine.process(&spec(q, t0, t1, params, Method::Constrained)).unwrap();
    let s = engine.process(&spec(q, t0, t1, params, Method::Sequential)).unwrap();
    (c.stats.instant_contact_calls, s.stats.instant_contact_calls, usize::from(!c.contacts.is_empty()))
}

#[test]
fn tiny_worlds_match_the_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let graphs = [three_rooms(), room_grid(3, 2, 6.0)];
    let (mut c_calls, mut s_calls, mut nonempty) = (0, 0, 0);
    for i in 0..240 {
        let graph = &graphs[i % 2];
        let objects = rng.gen_range(2..=8);
        let store = random_store(graph, objects, 12, rng.gen_range(0.3..0.9), &mut rng);
        let split = store.split(rng.gen_range(2..=4)).unwrap();
        for s in [&store, &split] {
            let (c, q, n) = check_world(graph, s, &mut rng);
            c_calls += c;
            s_calls += q;
            nonempty += n;
        }
    }
    assert!(nonempty >= 48, "only {nonempty} worlds had contacts");
    assert!(c_calls > 0 && s_calls > 0);
}

#[test]
fn euclidean_regions_cross_walls() {
    let graph = three_rooms();
    let lattices = LatticeIndex::new(&graph, 0.8).unwrap();
    let store = random_store(&graph, 1, 2, 1.0, &mut ChaCha8Rng::seed_from_u64(1));
    let engine = Engine::new(&graph, &store, &lattices);
    assert_eq!(engine.deriver(Method::Euclidean).unwrap().model(), RegionModel::Euclidean);
    assert_eq!(engine.deriver(Method::Constrained).unwrap().model(), RegionModel::Indoor);
    assert!(engine.deriver(Method::Raw).is_none());
}

#[test]
fn repeated_queries_are_identical() {
    let graph = room_grid(3, 2, 6.0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let store = random_store(&graph, 30, 60, 0.7, &mut rng);
    let lattices = LatticeIndex::new(&graph, 0.8).unwrap();
    let engine = Engine::new(&graph, &store, &lattices);
    let params = ContactParams { delta: 3.0, eta: 0.3, k: 4 };
    for method in Method::ALL {
        let a = engine.process(&spec(1, 0.0, 600.0, params, method)).unwrap();
        let b = engine.process(&spec(1, 0.0, 600.0, params, method)).unwrap();
        assert_eq!(a.contacts, b.contacts);
        assert_eq!(a.stats.instant_contact_calls, b.stats.instant_contact_calls);
        assert_eq!(a.stats.pair_distance_evals, b.stats.pair_distance_evals);
    }
    let c = engine.process(&spec(1, 0.0, 600.0, params, Method::Constrained)).unwrap();
    let s = engine.process(&spec(1, 0.0, 600.0, params, Method::Sequential)).unwrap();
    assert_eq!(c.contacts, s.contacts);
    assert!(c.stats.instant_contact_calls < s.stats.instant_contact_calls);
    assert!(c.stats.pair_distance_evals < s.stats.pair_distance_evals);
}

#[test]
fn interval_outside_the_lifespan_is_empty() {
    let graph = three_rooms();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let store = random_store(&graph, 5, 12, 1.0, &mut rng);
    let (_, end) = store.lifespan(ObjectId(1)).unwrap();
    let lattices = LatticeIndex::new(&graph, 0.8).unwrap();
    let engine = Engine::new(&graph, &store, &lattices);
    let params = ContactParams { delta: 100.0, eta: 0.01, k: 1 };
    let r = engine.process(&spec(1, end + 1.0, end + 500.0, params, Method::Constrained)).unwrap();
    assert!(r.contacts.is_empty());
    assert!(r.window.is_none());
    assert!(engine.process(&spec(99, 0.0, 100.0, params, Method::Constrained)).is_err());
    assert!(engine.process(&spec(1, 100.0, 0.0, params, Method::Constrained)).is_err());
}

#[test]
fn raw_answers_are_found_by_the_other_methods() {
    let graph = room_grid(3, 2, 6.0);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let store = random_store(&graph, 12, 40, 0.8, &mut rng);
        let lattices = LatticeIndex::new(&graph, 0.8).unwrap();
        let engine = Engine::new(&graph, &store, &lattices);
        let params = ContactParams { delta: 2.0, eta: 0.5, k: 3 };
        let raw = engine.process(&spec(1, 0.0, 400.0, params, Method::Raw)).unwrap().contacts;
        let c = engine.process(&spec(1, 0.0, 400.0, params, Method::Constrained)).unwrap().contacts;
        let e = engine.process(&spec(1, 0.0, 400.0, params, Method::Euclidean)).unwrap().contacts;
        assert!(raw.is_subset(&c), "{raw:?} {c:?}");
        assert!(raw.is_subset(&e), "{raw:?} {e:?}");
    }
}
