//! Subshift specifications and their language scanners.
//!
//! Every variant is scanned left to right by a deterministic machine whose
//! states are hashable; a word is admissible exactly when the scan never
//! dies. All scanners accept only words that extend to bi-infinite points.

mod dyck;
mod graph;
mod json;
mod sft;

use std::collections::BTreeSet;

pub use dyck::{bracket_names, ck_product_is_nonzero, DyckReduction, DyckSpec, DyckState};
pub use graph::{LabeledEdge, LabeledGraph};
pub use sft::SftSpec;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// A sofic shift presented by an essential left-resolving labeled graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoficSpec {
    graph: LabeledGraph,
}

impl SoficSpec {
    pub fn new(graph: LabeledGraph) -> Result<Self> {
        graph.validate_cover()?;
        Ok(SoficSpec { graph })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    fn step(&self, current: &[u32], s: Symbol) -> Option<Vec<u32>> {
        let next: BTreeSet<u32> = self
            .graph
            .edges()
            .iter()
            .filter(|e| e.label == s && current.binary_search(&(e.source as u32)).is_ok())
            .map(|e| e.target as u32)
            .collect();
        (!next.is_empty()).then(|| next.into_iter().collect())
    }
}

/// A subshift `Λ̃` obtained from `base` by replacing `target` with `fresh target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedSpec {
    base: Box<SubshiftSpec>,
    target: Symbol,
    fresh: Symbol,
    alphabet: Alphabet,
}

impl ExpandedSpec {
    pub fn new(base: SubshiftSpec, target: &str, fresh: &str) -> Result<Self> {
        let target = base.alphabet().symbol(target)?;
        if base.alphabet().symbol(fresh).is_ok() {
            return Err(Error::Invalid(format!(
                "fresh symbol {fresh:?} already belongs to the alphabet"
            )));
        }
        let alphabet = base.alphabet().extended(fresh)?;
        let fresh = Symbol(base.alphabet().len() as u32);
        Ok(ExpandedSpec {
            base: Box::new(base),
            target,
            fresh,
            alphabet,
        })
    }

    pub fn base(&self) -> &SubshiftSpec {
        &self.base
    }

    pub fn target(&self) -> Symbol {
        self.target
    }

    pub fn fresh(&self) -> Symbol {
        self.fresh
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

/// Tagged description of a subshift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubshiftSpec {
    Sft(SftSpec),
    Sofic(SoficSpec),
    Dyck(DyckSpec),
    MarkovDyck(DyckSpec),
    Full(Alphabet),
    Expanded(ExpandedSpec),
}

/// State of the left-to-right scanner of a [`SubshiftSpec`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScanState {
    Sft(Vec<Symbol>),
    Sofic(Vec<u32>),
    Dyck(DyckState),
    Full,
    Expanded {
        base: Box<ScanState>,
        awaiting_target: bool,
        at_start: bool,
    },
}

impl SubshiftSpec {
    pub fn full(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("full shift needs at least two symbols".into()));
        }
        Ok(SubshiftSpec::Full(Alphabet::numbered(n)))
    }

    pub fn full_with(alphabet: Alphabet) -> Result<Self> {
        if alphabet.len() < 2 {
            return Err(Error::Invalid("full shift needs at least two symbols".into()));
        }
        Ok(SubshiftSpec::Full(alphabet))
    }

    pub fn sft(alphabet: Alphabet, forbidden: &[&str]) -> Result<Self> {
        let words = forbidden
            .iter()
            .map(|f| alphabet.parse_word(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubshiftSpec::Sft(SftSpec::new(alphabet, words)?))
    }

    pub fn sofic(graph: LabeledGraph) -> Result<Self> {
        Ok(SubshiftSpec::Sofic(SoficSpec::new(graph)?))
    }

    pub fn dyck(n: usize) -> Result<Self> {
        Ok(SubshiftSpec::Dyck(DyckSpec::dyck(n)?))
    }

    pub fn markov_dyck(matrix: &[Vec<i64>]) -> Result<Self> {
        Ok(SubshiftSpec::MarkovDyck(DyckSpec::from_int_matrix(matrix)?))
    }

    pub fn expanded(base: SubshiftSpec, target: &str, fresh: &str) -> Result<Self> {
        Ok(SubshiftSpec::Expanded(ExpandedSpec::new(base, target, fresh)?))
    }

    /// The golden-mean shift: `{0,1}` with `11` forbidden.
    pub fn golden_mean() -> Self {
        SubshiftSpec::sft(Alphabet::numbered(2), &["1 1"]).expect("golden mean is valid")
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            SubshiftSpec::Sft(s) => s.alphabet(),
            SubshiftSpec::Sofic(s) => s.graph().alphabet(),
            SubshiftSpec::Dyck(d) | SubshiftSpec::MarkovDyck(d) => d.alphabet(),
            SubshiftSpec::Full(a) => a,
            SubshiftSpec::Expanded(e) => e.alphabet(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SubshiftSpec::Sft(_) => "sft",
            SubshiftSpec::Sofic(_) => "sofic",
            SubshiftSpec::Dyck(_) => "dyck",
            SubshiftSpec::MarkovDyck(_) => "markov_dyck",
            SubshiftSpec::Full(_) => "full",
            SubshiftSpec::Expanded(_) => "expanded",
        }
    }

    pub fn dyck_spec(&self) -> Option<&DyckSpec> {
        match self {
            SubshiftSpec::Dyck(d) | SubshiftSpec::MarkovDyck(d) => Some(d),
            _ => None,
        }
    }

    pub fn initial_state(&self) -> ScanState {
        match self {
            SubshiftSpec::Sft(_) => ScanState::Sft(Vec::new()),
            SubshiftSpec::Sofic(s) => {
                ScanState::Sofic((0..s.graph().vertex_count() as u32).collect())
            }
            SubshiftSpec::Dyck(d) | SubshiftSpec::MarkovDyck(d) => ScanState::Dyck(d.initial()),
            SubshiftSpec::Full(_) => ScanState::Full,
            SubshiftSpec::Expanded(e) => ScanState::Expanded {
                base: Box::new(e.base.initial_state()),
                awaiting_target: false,
                at_start: true,
            },
        }
    }

    /// One scanner step; `None` once the word read so far is inadmissible.
    pub fn step(&self, state: &ScanState, s: Symbol) -> Option<ScanState> {
        match (self, state) {
            (SubshiftSpec::Sft(spec), ScanState::Sft(st)) => spec.step(st, s).map(ScanState::Sft),
            (SubshiftSpec::Sofic(spec), ScanState::Sofic(st)) => {
                spec.step(st, s).map(ScanState::Sofic)
            }
            (SubshiftSpec::Dyck(d) | SubshiftSpec::MarkovDyck(d), ScanState::Dyck(st)) => {
                d.step(st, s).map(ScanState::Dyck)
            }
            (SubshiftSpec::Full(a), ScanState::Full) => a.contains(s).then_some(ScanState::Full),
            (
                SubshiftSpec::Expanded(e),
                ScanState::Expanded {
                    base,
                    awaiting_target,
                    at_start,
                },
            ) => {
                let advance = |sym| e.base.step(base, sym).map(Box::new);
                let (base, awaiting_target) = if s == e.fresh {
                    if *awaiting_target {
                        return None;
                    }
                    (advance(e.target)?, true)
                } else if s == e.target {
                    if *awaiting_target {
                        (base.clone(), false)
                    } else if *at_start {
                        (advance(e.target)?, false)
                    } else {
                        return None;
                    }
                } else {
                    if *awaiting_target || !e.base.alphabet().contains(s) {
                        return None;
                    }
                    (advance(s)?, false)
                };
                Some(ScanState::Expanded {
                    base,
                    awaiting_target,
                    at_start: false,
                })
            }
            _ => None,
        }
    }

    pub fn run_from(&self, state: &ScanState, w: &[Symbol]) -> Option<ScanState> {
        let mut st = state.clone();
        for &s in w {
            st = self.step(&st, s)?;
        }
        Some(st)
    }

    pub fn run(&self, w: &[Symbol]) -> Option<ScanState> {
        self.run_from(&self.initial_state(), w)
    }

    /// Whether `w` belongs to the language `B_*(Λ)`.
    pub fn is_admissible(&self, w: &[Symbol]) -> Result<bool> {
        self.alphabet().check_word(w)?;
        Ok(self.run(w).is_some())
    }

    /// Reduction in the (Markov–)Dyck monoid; errors for other variants.
    pub fn reduce_dyck(&self, w: &[Symbol]) -> Result<DyckReduction> {
        match self.dyck_spec() {
            Some(d) => d.reduce(w),
            None => Err(Error::Invalid(format!(
                "{} spec has no bracket reduction",
                self.kind()
            ))),
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet().parse_word(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adm(spec: &SubshiftSpec, text: &str) -> bool {
        let w = spec.parse_word(text).unwrap();
        spec.is_admissible(&w).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let d2 = SubshiftSpec::dyck(2).unwrap();
        assert!(adm(&d2, "a1 b1"));
        assert!(!adm(&d2, "a1 b2"));
        let gm = SubshiftSpec::golden_mean();
        assert!(!adm(&gm, "1 1"));
        assert!(adm(&gm, "1 0 1"));
        for spec in [&d2, &gm] {
            assert!(spec.is_admissible(&[]).unwrap());
        }
    }

    #[test]
    fn out_of_alphabet_symbol_is_an_error() {
        let gm = SubshiftSpec::golden_mean();
        assert!(gm.is_admissible(&[Symbol(7)]).is_err());
    }

    #[test]
    fn expanded_scanner_forces_fresh_before_target() {
        let ex = SubshiftSpec::expanded(SubshiftSpec::golden_mean(), "1", "e").unwrap();
        assert!(adm(&ex, "e 1 0 e 1"));
        assert!(adm(&ex, "1 0 e"));
        assert!(!adm(&ex, "0 1"));
        assert!(!adm(&ex, "e 1 e 1"));
        assert!(!adm(&ex, "e 0"));
        assert!(!adm(&ex, "e e"));
    }

    #[test]
    fn fresh_symbol_collision_rejected() {
        assert!(SubshiftSpec::expanded(SubshiftSpec::golden_mean(), "1", "0").is_err());
        assert!(SubshiftSpec::expanded(SubshiftSpec::golden_mean(), "7", "e").is_err());
    }
}
