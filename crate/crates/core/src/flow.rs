//! Symbol expansion `a ↦ 0a` and its inverse, on words, SFTs and covers.

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::subshift::{ExpandedSpec, LabeledEdge, LabeledGraph, SftSpec, SubshiftSpec};

/// Replace `target` by `fresh target`. The fresh symbol takes the next free id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionPlan {
    pub target: Symbol,
    pub fresh: Symbol,
    base: Alphabet,
    expanded: Alphabet,
}

impl ExpansionPlan {
    pub fn new(alphabet: &Alphabet, target: &str, fresh: &str) -> Result<Self> {
        let target = alphabet.symbol(target)?;
        if alphabet.symbol(fresh).is_ok() {
            return Err(Error::Invalid(format!(
                "fresh symbol {fresh:?} already belongs to the alphabet"
            )));
        }
        Ok(ExpansionPlan {
            target,
            fresh: Symbol(alphabet.len() as u32),
            base: alphabet.clone(),
            expanded: alphabet.extended(fresh)?,
        })
    }

    pub(crate) fn for_spec(e: &ExpandedSpec) -> Self {
        ExpansionPlan {
            target: e.target(),
            fresh: e.fresh(),
            base: e.base().alphabet().clone(),
            expanded: e.alphabet().clone(),
        }
    }

    pub fn base_alphabet(&self) -> &Alphabet {
        &self.base
    }

    pub fn expanded_alphabet(&self) -> &Alphabet {
        &self.expanded
    }

    pub fn fresh_name(&self) -> &str {
        self.expanded.name(self.fresh)
    }

    pub fn expand_word(&self, w: &[Symbol]) -> Result<Word> {
        self.base.check_word(w)?;
        let mut out = Vec::with_capacity(w.len() * 2);
        for &s in w {
            if s == self.target {
                out.push(self.fresh);
            }
            out.push(s);
        }
        Ok(Word::from(out))
    }

    /// Exact inverse of [`ExpansionPlan::expand_word`].
    pub fn contract_word(&self, w: &[Symbol]) -> Result<Word> {
        self.expanded.check_word(w)?;
        let mut out = Vec::with_capacity(w.len());
        let mut i = 0;
        while i < w.len() {
            let s = w[i];
            if s == self.fresh {
                if w.get(i + 1) != Some(&self.target) {
                    return Err(Error::Contract(format!(
                        "fresh symbol at position {i} is not followed by the target"
                    )));
                }
                out.push(self.target);
                i += 2;
            } else if s == self.target {
                return Err(Error::Contract(format!(
                    "target at position {i} is not preceded by the fresh symbol"
                )));
            } else {
                out.push(s);
                i += 1;
            }
        }
        Ok(Word::from(out))
    }
}

/// Forbidden words for the expanded SFT:
/// `fresh·x` for `x ≠ target`, `y·target` for `y ≠ fresh`, and the images of
/// the original forbidden words.
pub fn expand_sft(spec: &SftSpec, plan: &ExpansionPlan) -> Result<SftSpec> {
    if plan.base_alphabet() != spec.alphabet() {
        return Err(Error::Invalid("plan was made for a different alphabet".into()));
    }
    let sigma = plan.expanded_alphabet();
    let mut forbidden = Vec::new();
    for x in sigma.symbols().filter(|&x| x != plan.target) {
        forbidden.push(Word::from(vec![plan.fresh, x]));
    }
    for y in sigma.symbols().filter(|&y| y != plan.fresh) {
        forbidden.push(Word::from(vec![y, plan.target]));
    }
    for f in spec.forbidden() {
        forbidden.push(plan.expand_word(f)?);
    }
    SftSpec::new(sigma.clone(), forbidden)
}

/// Splits every `target` edge `s → t` into `s →(fresh) w →(target) t`.
pub fn expand_labeled_graph(g: &LabeledGraph, plan: &ExpansionPlan) -> Result<LabeledGraph> {
    if plan.base_alphabet() != g.alphabet() {
        return Err(Error::Invalid("plan was made for a different alphabet".into()));
    }
    let mut edges = Vec::with_capacity(g.edges().len());
    let mut n = g.vertex_count();
    for e in g.edges() {
        if e.label == plan.target {
            edges.push(LabeledEdge {
                source: e.source,
                label: plan.fresh,
                target: n,
            });
            edges.push(LabeledEdge {
                source: n,
                label: plan.target,
                target: e.target,
            });
            n += 1;
        } else {
            edges.push(*e);
        }
    }
    LabeledGraph::new(plan.expanded_alphabet().clone(), n, edges)
}

/// Expands any spec. Finite-state variants stay exact SFT or sofic specs;
/// bracket shifts are wrapped.
pub fn expand_spec(spec: &SubshiftSpec, target: &str, fresh: &str) -> Result<SubshiftSpec> {
    let plan = ExpansionPlan::new(spec.alphabet(), target, fresh)?;
    match finite_presentation(spec) {
        Some(SubshiftSpec::Sft(s)) => Ok(SubshiftSpec::Sft(expand_sft(&s, &plan)?)),
        Some(SubshiftSpec::Full(a)) => {
            let s = SftSpec::new(a, Vec::new())?;
            Ok(SubshiftSpec::Sft(expand_sft(&s, &plan)?))
        }
        Some(SubshiftSpec::Sofic(s)) => SubshiftSpec::sofic(expand_labeled_graph(s.graph(), &plan)?),
        _ => SubshiftSpec::expanded(spec.clone(), target, fresh),
    }
}

/// An SFT, sofic or full-shift spec with the same language, when one exists
/// by construction.
pub fn finite_presentation(spec: &SubshiftSpec) -> Option<SubshiftSpec> {
    match spec {
        SubshiftSpec::Sft(_) | SubshiftSpec::Sofic(_) | SubshiftSpec::Full(_) => Some(spec.clone()),
        SubshiftSpec::Dyck(_) | SubshiftSpec::MarkovDyck(_) => None,
        SubshiftSpec::Expanded(e) => {
            let base = finite_presentation(e.base())?;
            let alphabet = e.base().alphabet();
            let target = alphabet.name(e.target());
            let fresh = e.alphabet().name(e.fresh());
            expand_spec(&base, target, fresh).ok()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{blocks, Bounds};
    use std::collections::BTreeSet;

    fn golden_plan() -> (SftSpec, ExpansionPlan) {
        let SubshiftSpec::Sft(s) = SubshiftSpec::golden_mean() else { unreachable!() };
        let plan = ExpansionPlan::new(s.alphabet(), "1", "e").unwrap();
        (s, plan)
    }

    #[test]
    fn word_examples() {
        let (_, plan) = golden_plan();
        let a = plan.base_alphabet().clone();
        let e = plan.expanded_alphabet().clone();
        let w = a.parse_word("1 1").unwrap();
        assert_eq!(e.display_word(&plan.expand_word(&w).unwrap()), "e 1 e 1");
        let z = a.parse_word("0 0 0").unwrap();
        assert_eq!(plan.expand_word(&z).unwrap(), z);
        let bad = e.parse_word("e 0").unwrap();
        assert!(matches!(plan.contract_word(&bad), Err(Error::Contract(_))));
        let bare = e.parse_word("0 1").unwrap();
        assert!(plan.contract_word(&bare).is_err());
    }

    #[test]
    fn golden_mean_forbidden_set() {
        let (s, plan) = golden_plan();
        let ex = expand_sft(&s, &plan).unwrap();
        let a = ex.alphabet();
        let f: BTreeSet<String> = ex.forbidden().iter().map(|w| a.display_word(w)).collect();
        for needed in ["e 0", "e e", "0 1", "1 1"] {
            assert!(f.contains(needed), "missing {needed}: {f:?}");
        }
    }

    #[test]
    fn single_symbol_expansion_alternates() {
        let a = Alphabet::new(&["x"]).unwrap();
        let s = SftSpec::new(a.clone(), Vec::new()).unwrap();
        let plan = ExpansionPlan::new(&a, "x", "e").unwrap();
        let spec = SubshiftSpec::Sft(expand_sft(&s, &plan).unwrap());
        let b4 = blocks(&spec, 4, Bounds::default()).unwrap();
        let shown: Vec<String> = b4.iter().map(|w| spec.alphabet().display_word(w)).collect();
        assert_eq!(shown, vec!["x e x e", "e x e x"]);
    }

    #[test]
    fn full_shift_cover_expansion() {
        let a = Alphabet::new(&["a", "b"]).unwrap();
        let g = LabeledGraph::from_triples(a.clone(), 1, &[(0, "a", 0), (0, "b", 0)]).unwrap();
        let plan = ExpansionPlan::new(&a, "a", "e").unwrap();
        let ex = expand_labeled_graph(&g, &plan).unwrap();
        assert_eq!(ex.vertex_count(), 2);
        let e = ex.alphabet();
        let mut triples: Vec<(usize, String, usize)> = ex
            .edges()
            .iter()
            .map(|x| (x.source, e.name(x.label).to_string(), x.target))
            .collect();
        triples.sort();
        assert_eq!(
            triples,
            vec![(0, "b".into(), 0), (0, "e".into(), 1), (1, "a".into(), 0)]
        );
        ex.validate_cover().unwrap();
    }

    #[test]
    fn untouched_graph_gains_only_the_symbol() {
        let a = Alphabet::new(&["a", "b"]).unwrap();
        let g = LabeledGraph::from_triples(a.clone(), 1, &[(0, "b", 0)]).unwrap();
        let plan = ExpansionPlan::new(&a, "a", "e").unwrap();
        let ex = expand_labeled_graph(&g, &plan).unwrap();
        assert_eq!(ex.vertex_count(), 1);
        assert_eq!(ex.edges(), g.edges());
        assert_eq!(ex.alphabet().len(), 3);
    }

    #[test]
    fn golden_cover_gains_one_vertex_per_target_edge() {
        let g = LabeledGraph::from_triples(
            Alphabet::numbered(2),
            2,
            &[(0, "0", 0), (1, "1", 0), (0, "0", 1)],
        )
        .unwrap();
        let plan = ExpansionPlan::new(g.alphabet(), "1", "e").unwrap();
        let ex = expand_labeled_graph(&g, &plan).unwrap();
        assert_eq!(ex.vertex_count(), 3);
        ex.validate_cover().unwrap();
    }

    #[test]
    fn collisions_rejected() {
        let a = Alphabet::numbered(2);
        assert!(ExpansionPlan::new(&a, "1", "0").is_err());
        assert!(ExpansionPlan::new(&a, "2", "e").is_err());
    }

    #[test]
    fn bracket_shifts_are_wrapped() {
        let d2 = SubshiftSpec::dyck(2).unwrap();
        let ex = expand_spec(&d2, "b1", "e").unwrap();
        assert_eq!(ex.kind(), "expanded");
        let gm = expand_spec(&SubshiftSpec::golden_mean(), "1", "e").unwrap();
        assert_eq!(gm.kind(), "sft");
    }
}
