use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::LambdaGraphSystem;
use crate::alphabet::{Symbol, Word};
use crate::invariants::IntMatrix;

/// A failed structural axiom, with enough detail to locate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoSuccessor { level: usize, vertex: usize },
    NoPredecessor { level: usize, vertex: usize },
    /// Two edges with one label end at the same vertex of `V_{level+1}`.
    SharedLabel { level: usize, first: usize, second: usize, label: String, target: usize },
    IotaNotSurjective { level: usize, vertex: usize },
    /// `vertex ∈ V_{level}` and `ι(vertex)` disagree on incoming `label`.
    LabelIota { level: usize, vertex: usize, label: String },
    /// Label multisets differ for `u ∈ V_{level-1}`, `v ∈ V_{level+1}`.
    Local { level: usize, lower: usize, upper: usize },
    NotSeparated { level: usize, first: usize, second: usize },
    MatrixIdentity { level: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoSuccessor { level, vertex } => {
                write!(f, "vertex {vertex} of V_{level} has no outgoing edge")
            }
            Violation::NoPredecessor { level, vertex } => {
                write!(f, "vertex {vertex} of V_{level} has no incoming edge")
            }
            Violation::SharedLabel { level, first, second, label, target } => write!(
                f,
                "edges #{first} and #{second} of E_{{{level},{}}} both carry {label:?} into vertex {target}",
                level + 1
            ),
            Violation::IotaNotSurjective { level, vertex } => {
                write!(f, "vertex {vertex} of V_{level} is not in the image of ι")
            }
            Violation::LabelIota { level, vertex, label } => write!(
                f,
                "vertex {vertex} of V_{level} and its ι-image disagree on incoming label {label:?}"
            ),
            Violation::Local { level, lower, upper } => write!(
                f,
                "local property fails for u = {lower} in V_{} and v = {upper} in V_{}",
                level - 1,
                level + 1
            ),
            Violation::NotSeparated { level, first, second } => write!(
                f,
                "vertices {first} and {second} of V_{level} have the same predecessor set"
            ),
            Violation::MatrixIdentity { level } => write!(
                f,
                "A_{level} I_{} differs from I_{level} A_{}",
                level + 1,
                level + 1
            ),
        }
    }
}

pub type Check = std::result::Result<(), Violation>;

pub fn verify_essential(sys: &LambdaGraphSystem) -> Check {
    for l in 0..sys.depth() {
        let mut has_out = vec![false; sys.level_size(l)];
        let mut has_in = vec![false; sys.level_size(l + 1)];
        for e in sys.edges(l) {
            has_out[e.source] = true;
            has_in[e.target] = true;
        }
        if let Some(v) = has_out.iter().position(|&b| !b) {
            return Err(Violation::NoSuccessor { level: l, vertex: v });
        }
        if let Some(v) = has_in.iter().position(|&b| !b) {
            return Err(Violation::NoPredecessor { level: l + 1, vertex: v });
        }
    }
    Ok(())
}

pub fn verify_left_resolving(sys: &LambdaGraphSystem) -> Check {
    for l in 0..sys.depth() {
        let mut seen: BTreeMap<(usize, Symbol), usize> = BTreeMap::new();
        for (i, e) in sys.edges(l).iter().enumerate() {
            if let Some(&j) = seen.get(&(e.target, e.label)) {
                return Err(Violation::SharedLabel {
                    level: l,
                    first: j,
                    second: i,
                    label: sys.alphabet().name(e.label).to_string(),
                    target: e.target,
                });
            }
            seen.insert((e.target, e.label), i);
        }
    }
    Ok(())
}

pub fn verify_iota_surjective(sys: &LambdaGraphSystem) -> Check {
    for l in 0..sys.depth() {
        let mut hit = vec![false; sys.level_size(l)];
        for &u in sys.iota(l) {
            hit[u] = true;
        }
        if let Some(v) = hit.iter().position(|&b| !b) {
            return Err(Violation::IotaNotSurjective { level: l, vertex: v });
        }
    }
    Ok(())
}

fn in_labels(sys: &LambdaGraphSystem, l: usize) -> Vec<BTreeSet<Symbol>> {
    let mut labels = vec![BTreeSet::new(); sys.level_size(l + 1)];
    for e in sys.edges(l) {
        labels[e.target].insert(e.label);
    }
    labels
}

/// An `α` edge ends at `v ∈ V_{l+1}` iff one ends at `ι(v) ∈ V_l`, for `l ≥ 1`.
pub fn verify_label_iota(sys: &LambdaGraphSystem) -> Check {
    for l in 1..sys.depth() {
        let upper = in_labels(sys, l);
        let lower = in_labels(sys, l - 1);
        for (v, labels) in upper.iter().enumerate() {
            let below = &lower[sys.iota(l)[v]];
            if let Some(&s) = labels.symmetric_difference(below).next() {
                return Err(Violation::LabelIota {
                    level: l + 1,
                    vertex: v,
                    label: sys.alphabet().name(s).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// For all `u ∈ V_{l-1}`, `v ∈ V_{l+1}` the labels of edges `e ∈ E_{l,l+1}`
/// with `ι(s(e)) = u`, `t(e) = v` and of edges `f ∈ E_{l-1,l}` with
/// `s(f) = u`, `t(f) = ι(v)` agree as multisets.
pub fn verify_local_property(sys: &LambdaGraphSystem) -> Check {
    for l in 1..sys.depth() {
        let mut upper: BTreeMap<(usize, usize), Vec<Symbol>> = BTreeMap::new();
        for e in sys.edges(l) {
            let u = sys.iota(l - 1)[e.source];
            upper.entry((u, e.target)).or_default().push(e.label);
        }
        let mut lower: BTreeMap<(usize, usize), Vec<Symbol>> = BTreeMap::new();
        for f in sys.edges(l - 1) {
            lower.entry((f.source, f.target)).or_default().push(f.label);
        }
        for u in 0..sys.level_size(l - 1) {
            for v in 0..sys.level_size(l + 1) {
                let mut a = upper.get(&(u, v)).cloned().unwrap_or_default();
                let mut b = lower.get(&(u, sys.iota(l)[v])).cloned().unwrap_or_default();
                a.sort();
                b.sort();
                if a != b {
                    return Err(Violation::Local {
                        level: l,
                        lower: u,
                        upper: v,
                    });
                }
            }
        }
    }
    Ok(())
}

/// `Γ_l^-(v)` for every vertex: labels of length-`l` paths from `V_0` to `v`.
pub fn predecessor_sets(sys: &LambdaGraphSystem) -> Vec<Vec<BTreeSet<Word>>> {
    let mut out = vec![vec![BTreeSet::from([Word::empty()]); sys.level_size(0)]];
    for l in 0..sys.depth() {
        let prev = &out[l];
        let mut next = vec![BTreeSet::new(); sys.level_size(l + 1)];
        for e in sys.edges(l) {
            for w in &prev[e.source] {
                next[e.target].insert(w.concat(&[e.label]));
            }
        }
        out.push(next);
    }
    out
}

/// Distinct vertices of `V_l` have distinct `Γ_l^-`, checked for `l ≥ 1`.
/// Level 0 is exempt: every vertex there has the past `{∅}`.
pub fn verify_predecessor_separated(sys: &LambdaGraphSystem) -> Check {
    let pasts = predecessor_sets(sys);
    for (l, level) in pasts.iter().enumerate().skip(1) {
        let mut seen: BTreeMap<&BTreeSet<Word>, usize> = BTreeMap::new();
        for (v, p) in level.iter().enumerate() {
            if let Some(&u) = seen.get(p) {
                return Err(Violation::NotSeparated {
                    level: l,
                    first: u,
                    second: v,
                });
            }
            seen.insert(p, v);
        }
    }
    Ok(())
}

/// Per-level matrices `A_l`, `A_l(·,α,·)` and `I_l`, each `m(l) × m(l+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrices {
    pub a: Vec<IntMatrix>,
    pub a_by_symbol: Vec<BTreeMap<Symbol, IntMatrix>>,
    pub i: Vec<IntMatrix>,
}

pub fn transition_matrices(sys: &LambdaGraphSystem) -> TransitionMatrices {
    let mut a = Vec::with_capacity(sys.depth());
    let mut by_symbol = Vec::with_capacity(sys.depth());
    let mut i = Vec::with_capacity(sys.depth());
    for l in 0..sys.depth() {
        let (rows, cols) = (sys.level_size(l), sys.level_size(l + 1));
        let mut total = IntMatrix::zeros(rows, cols);
        let mut slices: BTreeMap<Symbol, IntMatrix> = sys
            .alphabet()
            .symbols()
            .map(|s| (s, IntMatrix::zeros(rows, cols)))
            .collect();
        for e in sys.edges(l) {
            let x = total.get(e.source, e.target) + BigInt::one();
            total.set(e.source, e.target, x);
            let slice = slices.get_mut(&e.label).expect("label in alphabet");
            let y = slice.get(e.source, e.target) + BigInt::one();
            slice.set(e.source, e.target, y);
        }
        let mut iota = IntMatrix::zeros(rows, cols);
        for (v, &u) in sys.iota(l).iter().enumerate() {
            iota.set(u, v, BigInt::one());
        }
        a.push(total);
        by_symbol.push(slices);
        i.push(iota);
    }
    TransitionMatrices {
        a,
        a_by_symbol: by_symbol,
        i,
    }
}

/// `A_l I_{l+1} = I_l A_{l+1}` for every computed `l`.
pub fn verify_matrix_identity(tm: &TransitionMatrices) -> Check {
    for l in 0..tm.a.len().saturating_sub(1) {
        let lhs = tm.a[l].mul(&tm.i[l + 1]).expect("shapes agree");
        let rhs = tm.i[l].mul(&tm.a[l + 1]).expect("shapes agree");
        if lhs != rhs {
            return Err(Violation::MatrixIdentity { level: l });
        }
    }
    Ok(())
}

/// Everything every builder must satisfy (predecessor separation excluded).
pub fn verify_structure(sys: &LambdaGraphSystem) -> Check {
    verify_essential(sys)?;
    verify_left_resolving(sys)?;
    verify_iota_surjective(sys)?;
    verify_label_iota(sys)?;
    verify_local_property(sys)?;
    verify_matrix_identity(&transition_matrices(sys))
}
