use std::collections::BTreeSet;

use super::verify::predecessor_sets;
use super::{Edge, LambdaGraphSystem, VertexLevel};
use crate::alphabet::Word;
use crate::error::{Error, Result};

/// A system with vertices renumbered by predecessor fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub system: LambdaGraphSystem,
    /// `position[l][old] = new`.
    pub position: Vec<Vec<usize>>,
}

/// Collapses `V_0` to a single root, orders each `V_l` (`l ≥ 1`) by
/// `Γ_l^-` and renames vertices positionally. Two predecessor-separated
/// systems are level-isomorphic iff their canonical forms are equal.
///
/// All vertices of `V_0` share the past `{∅}`, so the comparison can say
/// nothing finer about level 0 than a single class.
pub fn canonical_form(sys: &LambdaGraphSystem) -> Result<CanonicalForm> {
    let pasts = predecessor_sets(sys);
    let mut position = vec![vec![0; sys.level_size(0)]];
    for (l, level) in pasts.iter().enumerate().skip(1) {
        let mut order: Vec<(&BTreeSet<Word>, usize)> = level.iter().zip(0..).collect();
        order.sort();
        if let Some(w) = order.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::NotSeparated {
                level: l,
                first: w[0].1.min(w[1].1),
                second: w[0].1.max(w[1].1),
            });
        }
        let mut pos = vec![0; level.len()];
        for (new, &(_, old)) in order.iter().enumerate() {
            pos[old] = new;
        }
        position.push(pos);
    }
    let mut levels = vec![VertexLevel {
        names: vec!["v1".to_string()],
    }];
    levels.extend((1..=sys.depth()).map(|l| VertexLevel {
        names: (1..=sys.level_size(l)).map(|i| format!("v{i}")).collect(),
    }));
    let edges = (0..sys.depth())
        .map(|l| {
            let set: BTreeSet<Edge> = sys
                .edges(l)
                .iter()
                .map(|e| Edge {
                    source: position[l][e.source],
                    label: e.label,
                    target: position[l + 1][e.target],
                })
                .collect();
            set.into_iter().collect()
        })
        .collect();
    let iota = (0..sys.depth())
        .map(|l| {
            let mut map = vec![0; sys.level_size(l + 1)];
            for (v, &u) in sys.iota(l).iter().enumerate() {
                map[position[l + 1][v]] = position[l][u];
            }
            map
        })
        .collect();
    let system = LambdaGraphSystem::new(sys.alphabet().clone(), levels, edges, iota)?;
    Ok(CanonicalForm { system, position })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::lambda::{build_cantor_horizon_dyck, build_from_finite_graph};
    use crate::subshift::LabeledGraph;

    fn golden() -> LabeledGraph {
        LabeledGraph::from_triples(
            Alphabet::numbered(2),
            2,
            &[(0, "0", 0), (1, "1", 0), (0, "0", 1)],
        )
        .unwrap()
    }

    #[test]
    fn idempotent() {
        let d = build_cantor_horizon_dyck(2, 3).unwrap();
        let once = canonical_form(&d).unwrap().system;
        assert_eq!(canonical_form(&once).unwrap().system, once);
    }

    #[test]
    fn relabeling_invariance() {
        let g = golden();
        let a = canonical_form(&build_from_finite_graph(&g, 4).unwrap()).unwrap();
        let b = canonical_form(&build_from_finite_graph(&g.relabeled(&[1, 0]), 4).unwrap()).unwrap();
        assert_eq!(a.system.to_json().unwrap(), b.system.to_json().unwrap());
        assert_ne!(a.position, b.position);
    }

    #[test]
    fn unseparated_rejected() {
        let g = LabeledGraph::from_triples(
            Alphabet::new(&["a", "b"]).unwrap(),
            2,
            &[(0, "a", 0), (1, "b", 0), (1, "a", 1), (0, "b", 1)],
        )
        .unwrap();
        let sys = build_from_finite_graph(&g, 2).unwrap();
        assert!(matches!(
            canonical_form(&sys),
            Err(Error::NotSeparated { level: 1, first: 0, second: 1 })
        ));
    }
}
