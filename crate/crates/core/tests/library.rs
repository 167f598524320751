use lamplighter::cayley::{self, Exec, Format, LabeledGraph};
use lamplighter::json;
use lamplighter::trees::{hn_adjacent, neighbors, phi, phi_inv};
use lamplighter::{GammaGroup, RingSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<(usize, RingSpec)> {
    vec![
        (1, RingSpec::Integers),
        (1, RingSpec::modulo(4)),
        (2, RingSpec::Integers),
        (2, RingSpec::modulo(6)),
        (3, RingSpec::modulo(5)),
        (4, RingSpec::modulo(7)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vertex_neighbors_pull_back_to_generators(seed in any::<u64>(), which in 0usize..6) {
        let (n, ring) = rings()[which];
        let gr = GammaGroup::new(n, ring).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gr.random_element(&mut rng, 5, 4, 3, 3);
        let v = phi(&gr, &g).unwrap();
        prop_assert_eq!(phi_inv(&gr, &v).unwrap(), g.clone());
        for w in neighbors(&v, ring, 1) {
            let adj = hn_adjacent(&v, &w).unwrap();
            let delta = g.inv().mul(&phi_inv(&gr, &w).unwrap()).unwrap();
            let s = gr.identify_generator(&delta);
            prop_assert!(s.is_some(), "{} -> {} is not a generator step", v, w);
            prop_assert_eq!(
                lamplighter::trees::edge_direction(&s.unwrap()),
                Some((adj.down, adj.up))
            );
        }
    }

    #[test]
    fn element_json_is_canonical(seed in any::<u64>(), which in 0usize..6) {
        let (n, ring) = rings()[which];
        let gr = GammaGroup::new(n, ring).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gr.random_element(&mut rng, 6, 50, 5, 5);
        let text = json::compact(&json::group_element_to_json(&gr, &g));
        let back = json::group_element_from_json(&gr, &json::parse(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &g);
        let pretty = json::pretty(&json::group_element_to_json(&gr, &g));
        let again = json::group_element_from_json(&gr, &json::parse(&pretty).unwrap()).unwrap();
        prop_assert_eq!(json::compact(&json::group_element_to_json(&gr, &again)), text);
    }
}

#[test]
fn graph_json_round_trip() {
    let gr = GammaGroup::new(2, RingSpec::Integers).unwrap();
    let graph = cayley::cayley_ball(&gr, 2, 1, Exec::Parallel).unwrap().to_graph();
    let text = graph.export(Format::Json);
    let back = LabeledGraph::from_json(&text).unwrap();
    assert_eq!(back, graph);
    assert_eq!(back.export(Format::Json), text);
    assert!(LabeledGraph::from_json("{\"vertices\":[],\"edges\":[],\"root\":\"x\"}").is_err());
}

#[test]
fn cayley_and_h_balls_match_in_size() {
    for (n, m, radius) in [(1, 2, 4), (1, 3, 3), (2, 2, 2), (2, 3, 2)] {
        let gr = GammaGroup::new(n, RingSpec::modulo(m)).unwrap();
        let c = cayley::cayley_ball(&gr, radius, 0, Exec::Serial).unwrap();
        let h = cayley::hn_ball(n, gr.ring(), radius, 0, Exec::Serial).unwrap();
        assert_eq!(c.len(), h.len());
        assert_eq!(c.edges.len(), h.edges.len());
        assert_eq!(c.layers, h.layers);
    }
}

#[test]
fn faulty_arithmetic_is_caught_by_iso() {
    let ctx = lamplighter::AnContext::new(2, RingSpec::modulo(5))
        .unwrap()
        .with_fault(lamplighter::an_ring::Fault::PowerTimesLinear);
    let bad = GammaGroup::from_context(ctx);
    let r = cayley::verify_iso(&bad, 2, 0, Exec::Serial).unwrap();
    assert!(!r.passed());
    assert!(r.to_text().starts_with("FAIL"));
}
