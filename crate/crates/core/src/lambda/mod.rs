//! Truncated λ-graph systems: leveled labeled graphs with ι-maps.

mod analysis;
mod builders;
mod canonical;
mod verify;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

pub use analysis::{
    check_condition_i, check_iota_irreducible, check_lambda_irreducible,
    check_synchronizingly_transitive, follower_equal, is_lambda_synchronizing_system,
    launching_vertex, succ_relation, terminal_set, Decision, TransitivityReport,
};
pub use builders::{
    build_auto, build_cantor_horizon_dyck, build_cantor_horizon_markov_dyck, build_from_finite_graph,
    build_lambda_synchronizing,
};
pub use canonical::{canonical_form, CanonicalForm};
pub use verify::{
    predecessor_sets, transition_matrices, verify_essential, verify_iota_surjective,
    verify_label_iota, verify_left_resolving, verify_local_property, verify_matrix_identity,
    verify_predecessor_separated, verify_structure, TransitionMatrices, Violation,
};

/// An edge from `source ∈ V_l` to `target ∈ V_{l+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub label: Symbol,
    pub target: usize,
}

/// Vertex metadata for one level; the vertex count is `names.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLevel {
    pub names: Vec<String>,
}

impl VertexLevel {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Levels `V_0..V_L`, edges `E_{l,l+1}` and maps `ι: V_{l+1} → V_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaGraphSystem {
    alphabet: Alphabet,
    levels: Vec<VertexLevel>,
    edges: Vec<Vec<Edge>>,
    iota: Vec<Vec<usize>>,
}

impl LambdaGraphSystem {
    /// Checks shapes and index ranges only; the axioms are left to the
    /// verifiers so that broken systems can still be loaded and diagnosed.
    pub fn new(
        alphabet: Alphabet,
        levels: Vec<VertexLevel>,
        mut edges: Vec<Vec<Edge>>,
        iota: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Invalid("a system needs at least level 0".into()));
        }
        if edges.len() + 1 != levels.len() || iota.len() + 1 != levels.len() {
            return Err(Error::Dimension(format!(
                "{} levels need {} edge levels and ι-maps, got {} and {}",
                levels.len(),
                levels.len() - 1,
                edges.len(),
                iota.len()
            )));
        }
        for (l, level) in levels.iter().enumerate() {
            if level.is_empty() {
                return Err(Error::Invalid(format!("level {l} has no vertices")));
            }
        }
        for (l, es) in edges.iter_mut().enumerate() {
            for e in es.iter() {
                if e.source >= levels[l].len() || e.target >= levels[l + 1].len() {
                    return Err(Error::Invalid(format!(
                        "edge {}->{} at level {l} is out of range",
                        e.source, e.target
                    )));
                }
                if !alphabet.contains(e.label) {
                    return Err(Error::UnknownSymbol(format!("#{}", e.label.0)));
                }
            }
            es.sort();
        }
        for (l, map) in iota.iter().enumerate() {
            if map.len() != levels[l + 1].len() {
                return Err(Error::Dimension(format!(
                    "ι at level {} has {} entries for {} vertices",
                    l + 1,
                    map.len(),
                    levels[l + 1].len()
                )));
            }
            if let Some(&bad) = map.iter().find(|&&u| u >= levels[l].len()) {
                return Err(Error::Invalid(format!(
                    "ι maps into missing vertex {bad} of level {l}"
                )));
            }
        }
        Ok(LambdaGraphSystem {
            alphabet,
            levels,
            edges,
            iota,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Truncation depth `L`: the top level index.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[VertexLevel] {
        &self.levels
    }

    pub fn level_size(&self, l: usize) -> usize {
        self.levels[l].len()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(VertexLevel::len).collect()
    }

    /// Edges from `V_l` to `V_{l+1}`, sorted.
    pub fn edges(&self, l: usize) -> &[Edge] {
        &self.edges[l]
    }

    /// `ι: V_{l+1} → V_l`.
    pub fn iota(&self, l: usize) -> &[usize] {
        &self.iota[l]
    }

    /// `ι^n` applied to `v ∈ V_l`, landing in `V_{l-n}`.
    pub fn iota_pow(&self, l: usize, v: usize, n: usize) -> usize {
        (0..n).fold(v, |v, k| self.iota[l - k - 1][v])
    }

    /// Vertex sets reached from `start ⊆ V_l` along paths labeled `w`.
    pub fn follow(&self, l: usize, start: &[bool], w: &[Symbol]) -> Vec<bool> {
        let mut cur = start.to_vec();
        for (k, &s) in w.iter().enumerate() {
            let mut next = vec![false; self.level_size(l + k + 1)];
            for e in &self.edges[l + k] {
                if e.label == s && cur[e.source] {
                    next[e.target] = true;
                }
            }
            cur = next;
        }
        cur
    }

    /// True when all levels ≥ 1 carry the same graph and ι is the identity,
    /// as for the embedding of a finite labeled graph. Properties of such a
    /// system are decided on the finite graph.
    pub fn is_stationary(&self) -> bool {
        let m = self.level_size(0);
        self.levels.iter().all(|lv| lv.len() == m)
            && self
                .iota
                .iter()
                .all(|map| map.iter().enumerate().all(|(i, &u)| i == u))
            && self.edges.windows(2).all(|w| w[0] == w[1])
            && !self.edges.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = SystemDoc {
            alphabet: self.alphabet.names().to_vec(),
            levels: self.levels.iter().map(|lv| lv.names.clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|es| {
                    es.iter()
                        .map(|e| (e.source, self.alphabet.name(e.label).to_string(), e.target))
                        .collect()
                })
                .collect(),
            iota: self.iota.clone(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SystemDoc = serde_json::from_str(text)?;
        let alphabet = Alphabet::new(&doc.alphabet)?;
        let edges = doc
            .edges
            .iter()
            .map(|es| {
                es.iter()
                    .map(|(s, label, t)| {
                        Ok(Edge {
                            source: *s,
                            label: alphabet.symbol(label)?,
                            target: *t,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let levels = doc.levels.into_iter().map(|names| VertexLevel { names }).collect();
        LambdaGraphSystem::new(alphabet, levels, edges, doc.iota)
    }

    /// Graphviz rendering: one cluster per level, solid labeled edges sorted
    /// by endpoints and label, and dashed ι-edges. Every edge level must be non-empty.
    pub fn to_dot(&self) -> Result<String> {
        if let Some(l) = self.edges.iter().position(Vec::is_empty) {
            return Err(Error::Invalid(format!("edge level {l} is empty")));
        }
        let mut out = String::from("digraph lambda {\n  rankdir=TB;\n  node [shape=circle];\n");
        for (l, lv) in self.levels.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{l} {{\n    label=\"V_{l}\";");
            for (i, name) in lv.names.iter().enumerate() {
                let _ = writeln!(out, "    \"{l}:{i}\" [label=\"{}\"];", dot_escape(name));
            }
            out.push_str("  }\n");
        }
        for (l, es) in self.edges.iter().enumerate() {
            let mut sorted: Vec<&Edge> = es.iter().collect();
            sorted.sort_by_key(|e| (e.source, e.target, e.label));
            for e in sorted {
                let _ = writeln!(
                    out,
                    "  \"{l}:{}\" -> \"{}:{}\" [label=\"{}\"];",
                    e.source,
                    l + 1,
                    e.target,
                    dot_escape(self.alphabet.name(e.label))
                );
            }
        }
        for (l, map) in self.iota.iter().enumerate() {
            for (v, u) in map.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  \"{}:{v}\" -> \"{l}:{u}\" [style=dashed, arrowhead=empty];",
                    l + 1
                );
            }
        }
        out.push_str("}\n");
        Ok(out)
    }

    pub fn display_word(&self, w: &[Symbol]) -> String {
        self.alphabet.display_word(w)
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Serialize, Deserialize)]
struct SystemDoc {
    alphabet: Vec<String>,
    levels: Vec<Vec<String>>,
    edges: Vec<Vec<(usize, String, usize)>>,
    iota: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> LambdaGraphSystem {
        let a = Alphabet::new(&["a", "b"]).unwrap();
        let lv = |n: usize| VertexLevel {
            names: (0..n).map(|i| format!("v{i}")).collect(),
        };
        let e = |s, l: u32, t| Edge {
            source: s,
            label: Symbol(l),
            target: t,
        };
        LambdaGraphSystem::new(
            a,
            vec![lv(1), lv(1)],
            vec![vec![e(0, 1, 0), e(0, 0, 0)]],
            vec![vec![0]],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let sys = tiny();
        let back = LambdaGraphSystem::from_json(&sys.to_json().unwrap()).unwrap();
        assert_eq!(back, sys);
        assert_eq!(sys.edges(0)[0].label, Symbol(0));
    }

    #[test]
    fn shape_errors() {
        let a = Alphabet::new(&["a"]).unwrap();
        let lv = VertexLevel { names: vec!["x".into()] };
        assert!(LambdaGraphSystem::new(a.clone(), vec![lv.clone(), lv.clone()], vec![], vec![]).is_err());
        assert!(LambdaGraphSystem::new(a, vec![lv.clone(), lv], vec![vec![]], vec![vec![3]]).is_err());
    }

    #[test]
    fn dot_has_clusters_and_dashed_iota() {
        let dot = tiny().to_dot().unwrap();
        assert!(dot.contains("subgraph cluster_0"));
        assert!(dot.contains("\"1:0\" -> \"0:0\" [style=dashed"));
        assert!(dot.contains("[label=\"a\"]"));
    }

    #[test]
    fn dot_rejects_empty_edge_level() {
        let a = Alphabet::new(&["a"]).unwrap();
        let lv = VertexLevel { names: vec!["x".into()] };
        let sys = LambdaGraphSystem::new(a, vec![lv.clone(), lv], vec![vec![]], vec![vec![0]]).unwrap();
        assert!(sys.to_dot().is_err());
    }
}
