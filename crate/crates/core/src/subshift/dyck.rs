//! Dyck and Markov–Dyck shifts.
//!
//! The alphabet has `N` opening brackets `a1..aN` (ids `0..N`) and `N` closing
//! brackets `b1..bN` (ids `N..2N`). In the inverse monoid `a_i b_j` is `1` when
//! `i = j` and `0` otherwise. For a Markov–Dyck shift the symbols act as the
//! Cuntz–Krieger partial isometries `a_i ↦ t_i^*`, `b_i ↦ t_i`, so a word is
//! admissible iff the corresponding operator product is nonzero.
//!
//! Two independent deciders live here: a left-to-right stack machine (used
//! everywhere) and a monomial-algebra reducer kept as a cross-check.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// 0/1 constraint matrix together with the bracket alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckSpec {
    matrix: Vec<Vec<bool>>,
    alphabet: Alphabet,
}

/// Scanner state of the stack machine. The closing prefix already emitted
/// does not influence the future and is not stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckState {
    /// Support of the middle projection `Σ_{k ∈ S} t_k t_k^*` as a bitmask.
    support: u64,
    /// Pending opening brackets, bottom first (bracket indices `0..N`).
    stack: Vec<u16>,
}

/// Result of reducing a word in the (Markov–)Dyck monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DyckReduction {
    Zero,
    /// Reduced form `closers · P_S · openers`: no opening bracket is followed
    /// by a closing one.
    Reduced {
        closers: Vec<Symbol>,
        openers: Vec<Symbol>,
        /// Indices `k` whose range projection survives in the middle
        /// (always all of them for the plain Dyck shift).
        support: Vec<usize>,
    },
}

impl DyckReduction {
    pub fn is_zero(&self) -> bool {
        matches!(self, DyckReduction::Zero)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, DyckReduction::Reduced { closers, openers, .. } if closers.is_empty() && openers.is_empty())
    }
}

pub fn bracket_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("a{i}"))
        .chain((1..=n).map(|i| format!("b{i}")))
        .collect()
}

impl DyckSpec {
    pub fn dyck(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("Dyck shift needs N >= 2".into()));
        }
        DyckSpec::markov(vec![vec![true; n]; n])
    }

    pub fn markov(matrix: Vec<Vec<bool>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || n > 64 {
            return Err(Error::Invalid(format!("matrix size {n} out of range 1..=64")));
        }
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix must be square".into()));
        }
        if let Some(i) = (0..n).find(|&i| !matrix[i].iter().any(|&x| x)) {
            return Err(Error::Invalid(format!("matrix row {} is zero", i + 1)));
        }
        if let Some(j) = (0..n).find(|&j| !matrix.iter().any(|r| r[j])) {
            return Err(Error::Invalid(format!("matrix column {} is zero", j + 1)));
        }
        let alphabet = Alphabet::new(&bracket_names(n))?;
        Ok(DyckSpec { matrix, alphabet })
    }

    pub fn from_int_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let matrix = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| match x {
                        0 => Ok(false),
                        1 => Ok(true),
                        _ => Err(Error::Invalid(format!("matrix entry {x} is not 0/1"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        DyckSpec::markov(matrix)
    }

    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.matrix
    }

    pub fn is_full(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(|&x| x))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn opener(&self, i: usize) -> Symbol {
        Symbol(i as u32)
    }

    pub fn closer(&self, i: usize) -> Symbol {
        Symbol((self.n() + i) as u32)
    }

    /// `Some(i)` for `b_{i+1}`, `None` for an opening bracket.
    pub fn closer_index(&self, s: Symbol) -> Option<usize> {
        let k = s.index();
        (k >= self.n()).then(|| k - self.n())
    }

    fn row_mask(&self, i: usize) -> u64 {
        self.matrix[i]
            .iter()
            .enumerate()
            .filter(|(_, &x)| x)
            .fold(0u64, |m, (k, _)| m | (1 << k))
    }

    fn all_mask(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    pub fn initial(&self) -> DyckState {
        DyckState {
            support: self.all_mask(),
            stack: Vec::new(),
        }
    }

    pub fn step(&self, state: &DyckState, s: Symbol) -> Option<DyckState> {
        let n = self.n();
        let k = s.index();
        let mut next = state.clone();
        if k < n {
            // opening bracket a_c = t_c^*
            match state.stack.last() {
                Some(&d) => {
                    // t_d^* t_c^* = (t_c t_d)^*
                    if !self.matrix[k][d as usize] {
                        return None;
                    }
                }
                None => {
                    // P_S t_c^* = P_S Q_c t_c^*
                    next.support &= self.row_mask(k);
                    if next.support == 0 {
                        return None;
                    }
                }
            }
            next.stack.push(k as u16);
        } else {
            let j = k - n;
            match state.stack.last() {
                // t_c^* t_j = δ_{cj} Q_c; Q_c was folded into the support at push time
                Some(&c) => {
                    if c as usize != j {
                        return None;
                    }
                    next.stack.pop();
                }
                // P_S t_j = t_j iff j ∈ S, and t_j = t_j Q_j
                None => {
                    if state.support & (1 << j) == 0 {
                        return None;
                    }
                    next.support = self.row_mask(j);
                }
            }
        }
        Some(next)
    }

    /// Reduces a word with the stack machine.
    pub fn reduce(&self, w: &[Symbol]) -> Result<DyckReduction> {
        self.alphabet.check_word(w)?;
        let mut state = self.initial();
        let mut closers = Vec::new();
        for &s in w {
            if self.closer_index(s).is_some() && state.stack.is_empty() {
                closers.push(s);
            }
            match self.step(&state, s) {
                Some(next) => state = next,
                None => return Ok(DyckReduction::Zero),
            }
        }
        let openers = state.stack.iter().map(|&c| self.opener(c as usize)).collect();
        let support = (0..self.n())
            .filter(|k| state.support & (1 << k) != 0)
            .collect();
        Ok(DyckReduction::Reduced {
            closers,
            openers,
            support,
        })
    }
}

/// Monomial `t_μ P_k t_ν^*` of the Cuntz–Krieger algebra; `μ`, `ν` are index words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Monomial {
    left: Vec<usize>,
    anchor: usize,
    right: Vec<usize>,
}

/// Decides whether the product `φ_A(w_1)⋯φ_A(w_n)` is nonzero by expanding
/// every generator over the range projections `P_k = t_k t_k^*` and
/// multiplying monomials symbolically. Independent of [`DyckSpec::step`].
pub fn ck_product_is_nonzero(spec: &DyckSpec, w: &[Symbol]) -> bool {
    let n = spec.n();
    let a = spec.matrix();
    let mut current: BTreeSet<Monomial> = (0..n)
        .map(|k| Monomial {
            left: vec![],
            anchor: k,
            right: vec![],
        })
        .collect();
    for &s in w {
        let idx = s.index();
        let generator: Vec<Monomial> = if idx < n {
            // t_i^* = Σ_{k : A(i,k)=1} P_k t_i^*
            (0..n)
                .filter(|&k| a[idx][k])
                .map(|k| Monomial {
                    left: vec![],
                    anchor: k,
                    right: vec![idx],
                })
                .collect()
        } else {
            let i = idx - n;
            (0..n)
                .filter(|&k| a[i][k])
                .map(|k| Monomial {
                    left: vec![i],
                    anchor: k,
                    right: vec![],
                })
                .collect()
        };
        current = current
            .iter()
            .flat_map(|x| generator.iter().filter_map(move |g| multiply(x, g)))
            .collect();
        if current.is_empty() {
            return false;
        }
    }
    true
}

fn multiply(x: &Monomial, y: &Monomial) -> Option<Monomial> {
    // t_μ P_k t_ν^* · t_μ' P_k' t_ν'^*
    let (nu, mu2) = (&x.right, &y.left);
    if nu.len() <= mu2.len() {
        if mu2[..nu.len()] != nu[..] {
            return None;
        }
        let rest = &mu2[nu.len()..];
        match rest.first() {
            None => (x.anchor == y.anchor).then(|| Monomial {
                left: x.left.clone(),
                anchor: x.anchor,
                right: y.right.clone(),
            }),
            Some(&first) => (x.anchor == first).then(|| Monomial {
                left: [x.left.as_slice(), rest].concat(),
                anchor: y.anchor,
                right: y.right.clone(),
            }),
        }
    } else {
        if nu[..mu2.len()] != mu2[..] {
            return None;
        }
        let rest = &nu[mu2.len()..];
        (y.anchor == rest[0]).then(|| Monomial {
            left: x.left.clone(),
            anchor: x.anchor,
            right: [y.right.as_slice(), rest].concat(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(spec: &DyckSpec, text: &str) -> Vec<Symbol> {
        spec.alphabet().parse_word(text).unwrap().into_vec()
    }

    #[test]
    fn matching_pair_cancels() {
        let d = DyckSpec::dyck(2).unwrap();
        assert!(d.reduce(&word(&d, "a1 b1")).unwrap().is_identity());
        assert!(d.reduce(&word(&d, "a1 b2")).unwrap().is_zero());
    }

    #[test]
    fn closer_then_opener_is_already_reduced() {
        let d = DyckSpec::dyck(2).unwrap();
        match d.reduce(&word(&d, "b1 a1")).unwrap() {
            DyckReduction::Reduced {
                closers, openers, ..
            } => {
                assert_eq!(closers, word(&d, "b1"));
                assert_eq!(openers, word(&d, "a1"));
            }
            DyckReduction::Zero => panic!("b1 a1 is nonzero"),
        }
    }

    #[test]
    fn markov_constraint_on_consecutive_closers() {
        let md = DyckSpec::from_int_matrix(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(!md.reduce(&word(&md, "b1 b2")).unwrap().is_zero());
        assert!(md.reduce(&word(&md, "b2 b2")).unwrap().is_zero());
        // t_2^* t_2^* = (t_2 t_2)^* = 0
        assert!(md.reduce(&word(&md, "a2 a2")).unwrap().is_zero());
        // t_1^* t_1 t_2 = Q_1 t_2 = t_2, but t_2^* t_2 t_2 = Q_2 t_2 = 0
        assert!(!md.reduce(&word(&md, "a1 b1 b2")).unwrap().is_zero());
        assert!(md.reduce(&word(&md, "a2 b2 b2")).unwrap().is_zero());
    }

    #[test]
    fn symbolic_reducer_matches_hand_examples() {
        let md = DyckSpec::from_int_matrix(&[vec![1, 1], vec![1, 0]]).unwrap();
        for (text, nonzero) in [
            ("b1 b2", true),
            ("b2 b2", false),
            ("a2 a2", false),
            ("a1 b1 b2", true),
            ("a2 b2 b2", false),
            ("a1 b2", false),
            ("b2 a1", true),
        ] {
            assert_eq!(ck_product_is_nonzero(&md, &word(&md, text)), nonzero, "{text}");
        }
    }

    #[test]
    fn zero_rows_and_columns_rejected() {
        assert!(DyckSpec::from_int_matrix(&[vec![0, 0], vec![1, 1]]).is_err());
        assert!(DyckSpec::from_int_matrix(&[vec![1, 0], vec![1, 0]]).is_err());
        assert!(DyckSpec::from_int_matrix(&[vec![1, 2], vec![1, 0]]).is_err());
        assert!(DyckSpec::dyck(1).is_err());
    }
}
