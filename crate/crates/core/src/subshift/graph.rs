use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub source: usize,
    pub label: Symbol,
    pub target: usize,
}

/// A finite directed graph with labeled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertex_count: usize,
    edges: Vec<LabeledEdge>,
}

impl LabeledGraph {
    /// Checks only that indices are in range; use [`LabeledGraph::validate_cover`]
    /// for the presentation invariants.
    pub fn new(alphabet: Alphabet, vertex_count: usize, edges: Vec<LabeledEdge>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Invalid("graph has no vertices".into()));
        }
        for e in &edges {
            if e.source >= vertex_count || e.target >= vertex_count {
                return Err(Error::Invalid(format!(
                    "edge {}->{} references a missing vertex",
                    e.source, e.target
                )));
            }
            if !alphabet.contains(e.label) {
                return Err(Error::UnknownSymbol(format!("#{}", e.label.0)));
            }
        }
        Ok(LabeledGraph {
            alphabet,
            vertex_count,
            edges,
        })
    }

    /// Convenience constructor from `(source, label name, target)` triples.
    pub fn from_triples(
        alphabet: Alphabet,
        vertex_count: usize,
        triples: &[(usize, &str, usize)],
    ) -> Result<Self> {
        let edges = triples
            .iter()
            .map(|&(s, l, t)| {
                Ok(LabeledEdge {
                    source: s,
                    label: alphabet.symbol(l)?,
                    target: t,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LabeledGraph::new(alphabet, vertex_count, edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn into_parts(self) -> (Alphabet, usize, Vec<LabeledEdge>) {
        (self.alphabet, self.vertex_count, self.edges)
    }

    /// First pair of edges sharing a label and a terminal vertex.
    pub fn left_resolving_violation(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<(usize, Symbol), usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(&j) = seen.get(&(e.target, e.label)) {
                return Some((j, i));
            }
            seen.insert((e.target, e.label), i);
        }
        None
    }

    pub fn check_left_resolving(&self) -> Result<()> {
        match self.left_resolving_violation() {
            None => Ok(()),
            Some((first, second)) => {
                let e = self.edges[second];
                Err(Error::NotLeftResolving {
                    first,
                    second,
                    label: self.alphabet.name(e.label).to_string(),
                    target: e.target,
                })
            }
        }
    }

    /// Every vertex has an outgoing and an incoming edge.
    pub fn is_essential(&self) -> bool {
        let mut has_out = vec![false; self.vertex_count];
        let mut has_in = vec![false; self.vertex_count];
        for e in &self.edges {
            has_out[e.source] = true;
            has_in[e.target] = true;
        }
        has_out.iter().chain(has_in.iter()).all(|&b| b)
    }

    pub fn validate_cover(&self) -> Result<()> {
        if !self.is_essential() {
            return Err(Error::Invalid(
                "labeled graph is not essential (a vertex lacks an in- or out-edge)".into(),
            ));
        }
        self.check_left_resolving()
    }

    fn reachable_from(&self, start: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.source == v) {
                if seen.insert(e.target) {
                    stack.push(e.target);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        (0..self.vertex_count).all(|v| self.reachable_from(v).len() == self.vertex_count)
    }

    /// Edge-count matrix `A(i, j) = #{edges i -> j}`.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.vertex_count]; self.vertex_count];
        for e in &self.edges {
            a[e.source][e.target] += 1;
        }
        a
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> LabeledGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| LabeledEdge {
                source: perm[e.source],
                label: e.label,
                target: perm[e.target],
            })
            .collect();
        LabeledGraph {
            alphabet: self.alphabet.clone(),
            vertex_count: self.vertex_count,
            edges,
        }
    }
}
