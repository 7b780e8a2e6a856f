mod common;

use std::collections::BTreeSet;

use lgk_core::flow::{expand_spec, ExpansionPlan};
use lgk_core::language::{blocks, Bounds};
use lgk_core::subshift::{ck_product_is_nonzero, DyckSpec, SubshiftSpec};
use lgk_core::{Symbol, Word};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn specs() -> Vec<SubshiftSpec> {
    let mut out = vec![
        SubshiftSpec::golden_mean(),
        SubshiftSpec::full(3).unwrap(),
        SubshiftSpec::sofic(common::golden_cover()).unwrap(),
        SubshiftSpec::dyck(2).unwrap(),
        SubshiftSpec::markov_dyck(&[vec![1, 1], vec![1, 0]]).unwrap(),
        SubshiftSpec::expanded(SubshiftSpec::dyck(2).unwrap(), "b1", "e").unwrap(),
    ];
    out.extend(common::random_covers(3, 2).into_iter().map(|g| SubshiftSpec::sofic(g).unwrap()));
    out
}

fn word(symbols: &[u32]) -> Vec<Symbol> {
    symbols.iter().map(|&s| Symbol(s)).collect()
}

/// Extends one symbol at a time, choosing uniformly among continuations that
/// keep the word admissible.
fn random_admissible(spec: &SubshiftSpec, len: usize, rng: &mut ChaCha8Rng) -> Vec<Symbol> {
    let mut w = Vec::new();
    let symbols: Vec<Symbol> = spec.alphabet().symbols().collect();
    while w.len() < len {
        let options: Vec<Symbol> = symbols
            .iter()
            .copied()
            .filter(|&s| {
                let mut v = w.clone();
                v.push(s);
                spec.is_admissible(&v).unwrap()
            })
            .collect();
        w.push(*options.choose(rng).expect("admissible words extend"));
    }
    w
}

proptest! {
    #[test]
    fn language_is_factorial(idx in 0usize..8, raw in prop::collection::vec(0u32..8, 0..10)) {
        let specs = specs();
        let spec = &specs[idx % specs.len()];
        let k = spec.alphabet().len() as u32;
        let w = word(&raw.iter().map(|s| s % k).collect::<Vec<_>>());
        if spec.is_admissible(&w).unwrap() {
            for i in 0..=w.len() {
                for j in i..=w.len() {
                    prop_assert!(spec.is_admissible(&w[i..j]).unwrap());
                }
            }
        }
    }

    #[test]
    fn dyck_stack_matches_cuntz_krieger(n in 2usize..=3, raw in prop::collection::vec(0u32..6, 0..12)) {
        let d = DyckSpec::dyck(n).unwrap();
        let w = word(&raw.iter().map(|s| s % (2 * n as u32)).collect::<Vec<_>>());
        let spec = SubshiftSpec::dyck(n).unwrap();
        prop_assert_eq!(spec.is_admissible(&w).unwrap(), ck_product_is_nonzero(&d, &w));
        prop_assert_eq!(d.reduce(&w).unwrap().is_zero(), !ck_product_is_nonzero(&d, &w));
    }

    #[test]
    fn markov_dyck_stack_matches_cuntz_krieger(
        rows in prop::collection::vec(prop::collection::vec(0i64..=1, 3), 3),
        raw in prop::collection::vec(0u32..6, 0..10),
    ) {
        prop_assume!(rows.iter().all(|r| r.contains(&1)));
        prop_assume!((0..3).all(|j| rows.iter().any(|r| r[j] == 1)));
        let d = DyckSpec::from_int_matrix(&rows).unwrap();
        let spec = SubshiftSpec::markov_dyck(&rows).unwrap();
        let w = word(&raw);
        prop_assert_eq!(spec.is_admissible(&w).unwrap(), ck_product_is_nonzero(&d, &w));
    }
}

#[test]
fn contraction_inverts_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed(11));
    let cases = [
        (SubshiftSpec::golden_mean(), "1"),
        (SubshiftSpec::full(3).unwrap(), "2"),
        (SubshiftSpec::dyck(2).unwrap(), "a2"),
    ];
    for (spec, target) in cases {
        let plan = ExpansionPlan::new(spec.alphabet(), target, "e").unwrap();
        let expanded = expand_spec(&spec, target, "e").unwrap();
        for _ in 0..100 {
            let w = random_admissible(&spec, 12, &mut rng);
            let x = plan.expand_word(&w).unwrap();
            assert!(expanded.is_admissible(&x).unwrap());
            assert_eq!(plan.contract_word(&x).unwrap().as_slice(), w.as_slice());
        }
    }
}

#[test]
fn contraction_rejects_unpaired_symbols() {
    let plan = ExpansionPlan::new(SubshiftSpec::golden_mean().alphabet(), "1", "e").unwrap();
    let e = plan.fresh;
    assert!(plan.contract_word(&[e, Symbol(0)]).is_err());
    assert!(plan.contract_word(&[Symbol(0), Symbol(1)]).is_err());
    assert!(plan.contract_word(&[Symbol(0), e]).is_err());
}

/// Length-`l` factors of expansions of admissible base words of length
/// `l + 1`; every such factor lies inside one of them.
fn expansion_factors(spec: &SubshiftSpec, plan: &ExpansionPlan, l: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for w in blocks(spec, l + 1, Bounds::default()).unwrap() {
        let x = plan.expand_word(w.as_slice()).unwrap();
        for window in x.as_slice().windows(l) {
            out.insert(Word::from(window.to_vec()));
        }
    }
    out
}

#[test]
fn expanded_blocks_are_factors_of_expansions() {
    let mut cases = vec![
        (SubshiftSpec::golden_mean(), "1".to_string()),
        (SubshiftSpec::golden_mean(), "0".to_string()),
        (SubshiftSpec::full(2).unwrap(), "1".to_string()),
        (SubshiftSpec::sofic(common::golden_cover()).unwrap(), "0".to_string()),
    ];
    for g in common::random_covers(5, 2) {
        cases.push((SubshiftSpec::sofic(g).unwrap(), "1".into()));
    }
    for (spec, target) in cases {
        let plan = ExpansionPlan::new(spec.alphabet(), &target, "e").unwrap();
        let expanded = expand_spec(&spec, &target, "e").unwrap();
        assert_ne!(expanded.kind(), "expanded");
        for l in 1..=6 {
            let got: BTreeSet<Word> = blocks(&expanded, l, Bounds::default()).unwrap().into_iter().collect();
            assert_eq!(got, expansion_factors(&spec, &plan, l), "{} level {l}", spec.kind());
        }
    }
}

#[test]
fn fresh_symbol_is_always_followed_by_target() {
    for spec in [SubshiftSpec::golden_mean(), SubshiftSpec::dyck(2).unwrap()] {
        let target = spec.alphabet().name(Symbol(1)).to_string();
        let expanded = expand_spec(&spec, &target, "e").unwrap();
        let fresh = expanded.alphabet().symbol("e").unwrap();
        let t = expanded.alphabet().symbol(&target).unwrap();
        for w in blocks(&expanded, 6, Bounds::default()).unwrap() {
            for pair in w.as_slice().windows(2) {
                assert_eq!(pair[0] == fresh, pair[1] == t, "{}", expanded.alphabet().display_word(w.as_slice()));
            }
        }
    }
}

#[test]
fn sofic_cover_and_sft_share_a_language() {
    let sft = SubshiftSpec::golden_mean();
    let sofic = SubshiftSpec::sofic(common::golden_cover()).unwrap();
    for l in 0..=8 {
        assert_eq!(
            blocks(&sft, l, Bounds::default()).unwrap(),
            blocks(&sofic, l, Bounds::default()).unwrap()
        );
    }
    // Fibonacci counts
    let counts: Vec<usize> = (1..=8).map(|l| blocks(&sft, l, Bounds::default()).unwrap().len()).collect();
    assert_eq!(counts, vec![2, 3, 5, 8, 13, 21, 34, 55]);
}

#[test]
fn dyck_block_counts_match_enumeration() {
    let spec = SubshiftSpec::dyck(2).unwrap();
    let d = DyckSpec::dyck(2).unwrap();
    for l in 1..=5 {
        let mut brute = 0;
        for code in 0..4usize.pow(l as u32) {
            let w: Vec<Symbol> = (0..l).map(|i| Symbol(((code >> (2 * i)) & 3) as u32)).collect();
            if ck_product_is_nonzero(&d, &w) {
                brute += 1;
            }
        }
        assert_eq!(blocks(&spec, l, Bounds::default()).unwrap().len(), brute);
    }
}

#[test]
fn example_spec_files_round_trip() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let spec = SubshiftSpec::from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(SubshiftSpec::from_json(&spec.to_json().unwrap()).unwrap(), spec);
        seen += 1;
    }
    assert!(seen >= 7);
}
