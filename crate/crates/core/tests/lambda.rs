mod common;

use std::collections::BTreeSet;

use lgk_core::flow::expand_spec;
use lgk_core::lambda::{
    build_cantor_horizon_dyck, build_cantor_horizon_markov_dyck, build_from_finite_graph,
    build_lambda_synchronizing, canonical_form, follower_equal, is_lambda_synchronizing_system,
    launching_vertex, verify_structure, Edge, LambdaGraphSystem, Violation,
};
use lgk_core::language::{blocks, gamma_plus, Bounds};
use lgk_core::subshift::SubshiftSpec;
use lgk_core::{Tri, Word};
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn canonical(spec: &SubshiftSpec, depth: usize) -> LambdaGraphSystem {
    build_lambda_synchronizing(spec, depth, Bounds::default()).unwrap()
}

#[test]
fn every_builder_passes_the_structural_suite() {
    let mut systems = vec![
        common::golden_system(4),
        build_from_finite_graph(&common::full_cover(2), 4).unwrap(),
        build_cantor_horizon_dyck(2, 4).unwrap(),
        build_cantor_horizon_dyck(3, 3).unwrap(),
        build_cantor_horizon_markov_dyck(&[vec![1, 1], vec![1, 0]], 5).unwrap(),
        build_cantor_horizon_markov_dyck(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 4).unwrap(),
        canonical(&SubshiftSpec::golden_mean(), 4),
        canonical(&SubshiftSpec::full(3).unwrap(), 3),
        canonical(&SubshiftSpec::dyck(2).unwrap(), 3),
        canonical(&SubshiftSpec::expanded(SubshiftSpec::dyck(2).unwrap(), "b1", "e").unwrap(), 3),
    ];
    for g in common::random_covers(21, 4) {
        systems.push(build_from_finite_graph(&g, 4).unwrap());
        systems.push(canonical(&SubshiftSpec::sofic(g).unwrap(), 4));
    }
    for sys in &systems {
        verify_structure(sys).unwrap();
    }
}

#[test]
fn follower_equality_matches_enumerated_followers() {
    let horizon = 7;
    let cases = [
        (SubshiftSpec::golden_mean(), canonical(&SubshiftSpec::golden_mean(), 6)),
        (SubshiftSpec::dyck(2).unwrap(), build_cantor_horizon_dyck(2, 6).unwrap()),
    ];
    for (spec, sys) in cases {
        let words: Vec<Word> = (1..=3).flat_map(|k| blocks(&spec, k, Bounds::default()).unwrap()).collect();
        let followers: Vec<Vec<BTreeSet<Word>>> = words
            .iter()
            .map(|w| (1..=horizon).map(|k| gamma_plus(&spec, w.as_slice(), k, Bounds::default()).unwrap()).collect())
            .collect();
        for (xi, fx) in words.iter().zip(&followers) {
            for (eta, fe) in words.iter().zip(&followers) {
                let oracle = fx == fe;
                assert_eq!(
                    follower_equal(&sys, xi.as_slice(), eta.as_slice()).unwrap(),
                    oracle,
                    "{} vs {}",
                    spec.alphabet().display_word(xi.as_slice()),
                    spec.alphabet().display_word(eta.as_slice())
                );
            }
        }
    }
}

#[test]
fn canonical_form_ignores_vertex_numbering() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed(4));
    for g in common::random_covers(9, 5) {
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let a = build_from_finite_graph(&g, 4).unwrap();
        let b = build_from_finite_graph(&g.relabeled(&perm), 4).unwrap();
        let (ca, cb) = match (canonical_form(&a), canonical_form(&b)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(_), Err(_)) => continue,
            other => panic!("relabeling changed separation: {other:?}"),
        };
        assert_eq!(ca.system.to_json().unwrap(), cb.system.to_json().unwrap());
    }
}

#[test]
fn canonical_matches_horizon_for_markov_dyck() {
    for matrix in [vec![vec![1, 1], vec![1, 0]], vec![vec![1, 1], vec![1, 1]]] {
        let spec = SubshiftSpec::markov_dyck(&matrix).unwrap();
        let a = canonical_form(&canonical(&spec, 4)).unwrap().system;
        let b = canonical_form(&build_cantor_horizon_markov_dyck(&matrix, 4).unwrap()).unwrap().system;
        assert_eq!(a, b);
    }
}

#[test]
fn representatives_launch_their_vertices() {
    let depth = 6;
    for spec in [SubshiftSpec::golden_mean(), SubshiftSpec::dyck(2).unwrap(), SubshiftSpec::full(2).unwrap()] {
        let sys = canonical(&spec, depth);
        for l in 1..=depth {
            for (v, name) in sys.levels()[l].names.iter().enumerate() {
                let nu = if name == "∅" { Word::empty() } else { spec.parse_word(name).unwrap() };
                if nu.len() + l <= depth {
                    assert_eq!(launching_vertex(&sys, nu.as_slice(), l).unwrap(), Some(v), "{name} at level {l}");
                }
            }
        }
    }
}

#[test]
fn expanded_specs_stay_lambda_synchronizing() {
    let cases = [
        (SubshiftSpec::golden_mean(), "1"),
        (SubshiftSpec::full(2).unwrap(), "0"),
        (SubshiftSpec::dyck(2).unwrap(), "b1"),
    ];
    for (spec, target) in cases {
        let expanded = expand_spec(&spec, target, "e").unwrap();
        let sys = canonical(&expanded, 5);
        verify_structure(&sys).unwrap();
        let d = is_lambda_synchronizing_system(&sys, 3);
        assert_eq!(d.verdict, Tri::Yes, "{} expand {target}: {d}", spec.kind());
    }
}

#[test]
fn system_json_round_trips() {
    for sys in [common::golden_system(3), build_cantor_horizon_dyck(2, 3).unwrap()] {
        let text = sys.to_json().unwrap();
        assert_eq!(LambdaGraphSystem::from_json(&text).unwrap(), sys);
    }
}

#[test]
fn duplicate_label_into_a_vertex_is_reported() {
    let sys = build_cantor_horizon_dyck(2, 3).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&sys.to_json().unwrap()).unwrap();
    let edges = value["edges"][1].as_array_mut().unwrap();
    let mut twin = edges[0].clone();
    let source = twin[0].as_u64().unwrap() as usize;
    twin[0] = (0..sys.level_size(1)).find(|&s| s != source).unwrap().into();
    edges.push(twin);
    match LambdaGraphSystem::from_json(&value.to_string()) {
        Ok(bad) => assert!(matches!(verify_structure(&bad), Err(Violation::SharedLabel { level: 1, .. }))),
        Err(err) => assert!(err.to_string().contains("label"), "{err}"),
    }
}

#[test]
fn dyck_horizon_in_edges_are_determined_by_the_target() {
    let sys = build_cantor_horizon_dyck(2, 4).unwrap();
    for l in 0..4 {
        let labels: BTreeSet<(usize, u32)> = sys.edges(l).iter().map(|e: &Edge| (e.target, e.label.0)).collect();
        assert_eq!(labels.len(), sys.edges(l).len());
        // each target has one opener and N closers
        for t in 0..sys.level_size(l + 1) {
            assert_eq!(sys.edges(l).iter().filter(|e| e.target == t).count(), 3);
        }
    }
}
