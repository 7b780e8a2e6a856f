use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, LambdaGraphSystem, VertexLevel};
use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::language::{Bounds, Explorer, SyncVerdict};
use crate::subshift::{bracket_names, DyckSpec, LabeledGraph, SubshiftSpec};

/// The stationary system `V_l = V`, `E_{l,l+1} = E`, `ι = id`.
pub fn build_from_finite_graph(g: &LabeledGraph, depth: usize) -> Result<LambdaGraphSystem> {
    g.validate_cover()?;
    let names: Vec<String> = (0..g.vertex_count()).map(|v| format!("v{}", v + 1)).collect();
    let level = VertexLevel { names };
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge {
            source: e.source,
            label: e.label,
            target: e.target,
        })
        .collect();
    LambdaGraphSystem::new(
        g.alphabet().clone(),
        vec![level; depth + 1],
        vec![edges; depth],
        vec![(0..g.vertex_count()).collect(); depth],
    )
}

pub fn build_cantor_horizon_dyck(n: usize, depth: usize) -> Result<LambdaGraphSystem> {
    cantor_horizon(&DyckSpec::dyck(n)?, depth)
}

pub fn build_cantor_horizon_markov_dyck(matrix: &[Vec<i64>], depth: usize) -> Result<LambdaGraphSystem> {
    cantor_horizon(&DyckSpec::from_int_matrix(matrix)?, depth)
}

/// Vertices of `V_l` are the closing-bracket words `b_{μ1}⋯b_{μl}` with
/// `μ` admissible for the underlying topological Markov shift, in
/// lexicographic order of `μ`. For a target `w = w_0⋯w_l ∈ V_{l+1}`:
///
/// * an `a_{w_0}` edge comes from `w_1⋯w_l`,
/// * a `b_j` edge comes from `j w_0⋯w_{l-2}` whenever `A(j, w_0) = 1`,
///
/// and `ι` deletes the rightmost symbol.
pub(crate) fn cantor_horizon(d: &DyckSpec, depth: usize) -> Result<LambdaGraphSystem> {
    let n = d.n();
    let a = d.matrix();
    let mut words: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for _ in 0..depth {
        let prev = words.last().expect("level 0 present");
        let next = prev
            .iter()
            .flat_map(|w| {
                (0..n).filter_map(move |j| {
                    let ok = w.last().is_none_or(|&last| a[last][j]);
                    ok.then(|| {
                        let mut nw = w.clone();
                        nw.push(j);
                        nw
                    })
                })
            })
            .collect();
        words.push(next);
    }
    let index: Vec<BTreeMap<&[usize], usize>> = words
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect())
        .collect();
    let names = bracket_names(n);
    let levels = words
        .iter()
        .map(|lv| VertexLevel {
            names: lv
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "∅".to_string()
                    } else {
                        w.iter().map(|&k| names[n + k].as_str()).collect::<Vec<_>>().join(" ")
                    }
                })
                .collect(),
        })
        .collect();
    let mut edges = Vec::with_capacity(depth);
    let mut iota = Vec::with_capacity(depth);
    for l in 0..depth {
        let mut es = Vec::new();
        let mut map = Vec::with_capacity(words[l + 1].len());
        for (t, w) in words[l + 1].iter().enumerate() {
            es.push(Edge {
                source: index[l][&w[1..]],
                label: d.opener(w[0]),
                target: t,
            });
            for j in (0..n).filter(|&j| a[j][w[0]]) {
                let mut src = vec![j];
                src.extend_from_slice(&w[..l]);
                src.truncate(l);
                es.push(Edge {
                    source: index[l][src.as_slice()],
                    label: d.closer(j),
                    target: t,
                });
            }
            map.push(index[l][&w[..l]]);
        }
        edges.push(es);
        iota.push(map);
    }
    LambdaGraphSystem::new(d.alphabet().clone(), levels, edges, iota)
}

/// The canonical system: `V_l` is the set of l-past classes of
/// l-synchronizing words, with an `α` edge `[αν]_l → [ν]_{l+1}` for every
/// `α ∈ Γ_1^-(ν)`, and `ι([ν]_{l+1}) = [ν]_l`.
pub fn build_lambda_synchronizing(
    spec: &SubshiftSpec,
    depth: usize,
    bounds: Bounds,
) -> Result<LambdaGraphSystem> {
    let ex = Explorer::new(spec, bounds);
    let alphabet = ex.spec().alphabet().clone();
    let mut classes = Vec::with_capacity(depth + 1);
    for l in 0..=depth {
        let cs = ex.sync_classes(l)?;
        if cs.is_empty() {
            return Err(Error::Construction(format!(
                "no {l}-synchronizing word found"
            )));
        }
        classes.push(cs);
    }
    let lookup: Vec<BTreeMap<&BTreeSet<Word>, usize>> = classes
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (&c.past, i)).collect())
        .collect();
    let class_of = |w: &Word, l: usize| -> Result<usize> {
        match ex.is_l_synchronizing(w, l)? {
            SyncVerdict::Yes => {}
            other => {
                return Err(Error::Construction(format!(
                    "word {:?} is not provably {l}-synchronizing ({:?})",
                    alphabet.display_word(w),
                    other.tri()
                )))
            }
        }
        let past = ex.gamma_minus(w, l)?;
        lookup[l].get(&past).copied().ok_or_else(|| {
            Error::Construction(format!(
                "the {l}-past of {:?} matches no enumerated class",
                alphabet.display_word(w)
            ))
        })
    };

    let mut edges = Vec::with_capacity(depth);
    let mut iota = Vec::with_capacity(depth);
    for l in 0..depth {
        let mut es = Vec::new();
        let mut map = Vec::with_capacity(classes[l + 1].len());
        for (t, c) in classes[l + 1].iter().enumerate() {
            let nu = &c.representative;
            map.push(class_of(nu, l)?);
            for alpha in ex.gamma_minus(nu, 1)? {
                let w = alpha.concat(nu);
                es.push(Edge {
                    source: class_of(&w, l)?,
                    label: alpha[0],
                    target: t,
                });
            }
        }
        edges.push(es);
        iota.push(map);
    }
    let levels = classes
        .iter()
        .map(|cs| VertexLevel {
            names: cs
                .iter()
                .map(|c| {
                    if c.representative.is_empty() {
                        "∅".to_string()
                    } else {
                        alphabet.display_word(&c.representative)
                    }
                })
                .collect(),
        })
        .collect();
    LambdaGraphSystem::new(alphabet, levels, edges, iota)
}

/// The Cantor horizon for bracket shifts, the canonical construction
/// otherwise. Both present the same system up to level isomorphism.
pub fn build_auto(spec: &SubshiftSpec, depth: usize, bounds: Bounds) -> Result<LambdaGraphSystem> {
    match spec {
        SubshiftSpec::Dyck(d) | SubshiftSpec::MarkovDyck(d) => cantor_horizon(d, depth),
        _ => build_lambda_synchronizing(spec, depth, bounds),
    }
}
