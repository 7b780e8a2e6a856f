#![allow(dead_code)]

use lgk_core::lambda::{build_from_finite_graph, LambdaGraphSystem};
use lgk_core::subshift::{LabeledEdge, LabeledGraph};
use lgk_core::{Alphabet, Symbol};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Golden-mean Fischer cover: `0` from v1 to v1 and to v2, `1` from v2 to v1.
pub fn golden_cover() -> LabeledGraph {
    LabeledGraph::from_triples(
        Alphabet::numbered(2),
        2,
        &[(0, "0", 0), (1, "1", 0), (0, "0", 1)],
    )
    .unwrap()
}

pub fn full_cover(n: usize) -> LabeledGraph {
    let edges = (0..n)
        .map(|i| LabeledEdge {
            source: 0,
            label: Symbol(i as u32),
            target: 0,
        })
        .collect();
    LabeledGraph::new(Alphabet::numbered(n), 1, edges).unwrap()
}

pub fn golden_system(depth: usize) -> LambdaGraphSystem {
    build_from_finite_graph(&golden_cover(), depth).unwrap()
}

/// `LGK_TEST_SEED` replaces the fixed seed of every randomized test; proptest
/// cases are reproduced with `PROPTEST_RNG_SEED`.
pub fn seed(default: u64) -> u64 {
    std::env::var("LGK_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

/// Irreducible left-resolving covers with 2..=4 vertices over 2 or 3
/// symbols, drawn from a fixed seed. Each (target, label) pair receives at
/// most one edge, so left-resolving holds by construction; candidates that
/// are not strongly connected or that present a full shift are skipped.
pub fn random_covers(seed: u64, count: usize) -> Vec<LabeledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(self::seed(seed));
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(2..=3);
        let mut edges = Vec::new();
        for t in 0..n {
            for label in 0..k {
                if rng.gen_bool(0.6) {
                    edges.push(LabeledEdge {
                        source: rng.gen_range(0..n),
                        label: Symbol(label as u32),
                        target: t,
                    });
                }
            }
        }
        let g = match LabeledGraph::new(Alphabet::numbered(k), n, edges) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let uses_all = (0..k).all(|s| g.edges().iter().any(|e| e.label == Symbol(s as u32)));
        if g.validate_cover().is_ok() && g.is_strongly_connected() && uses_all && !presents_full_shift(&g) {
            out.push(g);
        }
    }
    out
}

fn presents_full_shift(g: &LabeledGraph) -> bool {
    let k = g.alphabet().len();
    let spec = lgk_core::subshift::SubshiftSpec::sofic(g.clone()).unwrap();
    let count = lgk_core::language::blocks(&spec, 4, Default::default()).unwrap().len();
    count == k.pow(4)
}
