//! Language-level queries: blocks, pasts and futures, l-synchronization.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::rc::Rc;

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::flow;
use crate::subshift::{ScanState, SubshiftSpec};
use crate::Tri;

/// Enumeration limits. `LGK_BUDGET` overrides `max_words`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_words: usize,
    pub max_depth: usize,
    pub follower_depth: usize,
    pub max_states: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_words: 1_000_000,
            max_depth: 12,
            follower_depth: 12,
            max_states: 200_000,
        }
    }
}

impl Bounds {
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        if let Some(n) = std::env::var("LGK_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            b.max_words = n;
        }
        b
    }

    pub fn with_max_words(mut self, n: usize) -> Self {
        self.max_words = n;
        self
    }
}

/// Outcome of an l-synchronization query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyncVerdict {
    Yes,
    /// A follower `ω` with `Γ_l^-(μω) ≠ Γ_l^-(μ)`.
    No(Word),
    Unknown,
}

impl SyncVerdict {
    pub fn tri(&self) -> Tri {
        match self {
            SyncVerdict::Yes => Tri::Yes,
            SyncVerdict::No(_) => Tri::No,
            SyncVerdict::Unknown => Tri::Unknown,
        }
    }
}

/// One l-past equivalence class of l-synchronizing words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncClass {
    pub past: BTreeSet<Word>,
    /// Shortlex-least candidate found in the class.
    pub representative: Word,
}

type Level = Rc<Vec<(Word, ScanState)>>;

/// Memoizing query engine over one spec.
///
/// Expanded specs over a finite-state base are rewritten to their exact SFT
/// or sofic form first; the language is unchanged.
pub struct Explorer {
    spec: SubshiftSpec,
    bounds: Bounds,
    levels: RefCell<Vec<Level>>,
}

impl Explorer {
    pub fn new(spec: &SubshiftSpec, bounds: Bounds) -> Self {
        let spec = flow::finite_presentation(spec).unwrap_or_else(|| spec.clone());
        let root = Rc::new(vec![(Word::empty(), spec.initial_state())]);
        Explorer {
            spec,
            bounds,
            levels: RefCell::new(vec![root]),
        }
    }

    pub fn spec(&self) -> &SubshiftSpec {
        &self.spec
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn level(&self, l: usize) -> Result<Level> {
        if l > self.bounds.max_depth {
            return Err(Error::Depth {
                len: l,
                depth: self.bounds.max_depth,
            });
        }
        let mut levels = self.levels.borrow_mut();
        while levels.len() <= l {
            let prev = levels.last().expect("level 0 is always present").clone();
            let mut next = Vec::new();
            for (w, st) in prev.iter() {
                for s in self.spec.alphabet().symbols() {
                    if let Some(ns) = self.spec.step(st, s) {
                        next.push((w.concat(&[s]), ns));
                        if next.len() > self.bounds.max_words {
                            return Err(Error::Budget {
                                level: levels.len(),
                                count: next.len(),
                            });
                        }
                    }
                }
            }
            levels.push(Rc::new(next));
        }
        Ok(levels[l].clone())
    }

    /// `B_l(Λ)` in lexicographic order.
    pub fn blocks(&self, l: usize) -> Result<Vec<Word>> {
        Ok(self.level(l)?.iter().map(|(w, _)| w.clone()).collect())
    }

    pub fn is_admissible(&self, w: &[Symbol]) -> Result<bool> {
        self.spec.is_admissible(w)
    }

    fn require_admissible(&self, w: &[Symbol]) -> Result<ScanState> {
        self.spec.alphabet().check_word(w)?;
        self.spec.run(w).ok_or_else(|| {
            Error::Invalid(format!(
                "word {:?} is not admissible",
                self.spec.alphabet().display_word(w)
            ))
        })
    }

    /// `Γ_l^-(μ)`: admissible `ν` of length `l` with `νμ` admissible.
    pub fn gamma_minus(&self, mu: &[Symbol], l: usize) -> Result<BTreeSet<Word>> {
        self.require_admissible(mu)?;
        Ok(self
            .level(l)?
            .iter()
            .filter(|(_, st)| self.spec.run_from(st, mu).is_some())
            .map(|(w, _)| w.clone())
            .collect())
    }

    /// `Γ_l^+(μ)`: admissible `ω` of length `l` with `μω` admissible.
    pub fn gamma_plus(&self, mu: &[Symbol], l: usize) -> Result<BTreeSet<Word>> {
        let st = self.require_admissible(mu)?;
        Ok(self
            .level(l)?
            .iter()
            .filter(|(w, _)| self.spec.run_from(&st, w).is_some())
            .map(|(w, _)| w.clone())
            .collect())
    }

    pub fn is_l_synchronizing(&self, mu: &[Symbol], l: usize) -> Result<SyncVerdict> {
        self.is_l_synchronizing_with(mu, l, self.bounds.follower_depth)
    }

    /// Decides whether every follower `ω` of `μ` keeps `Γ_l^-(μω) = Γ_l^-(μ)`.
    ///
    /// Since the language is factorial, `Γ_l^-(μω) ⊆ Γ_l^-(μ)` always, so it
    /// suffices to track the scanner states reached by `νμω` for every
    /// `ν ∈ Γ_l^-(μ)` alongside the state of `μω`. States equal to the lead
    /// state behave identically from then on and are dropped. The search
    /// is exact once the set of reachable tuples closes.
    pub fn is_l_synchronizing_with(
        &self,
        mu: &[Symbol],
        l: usize,
        follower_depth: usize,
    ) -> Result<SyncVerdict> {
        let lead = self.require_admissible(mu)?;
        if let SubshiftSpec::Sft(sft) = &self.spec {
            if mu.len() >= sft.memory() {
                return Ok(SyncVerdict::Yes);
            }
        }
        let others: BTreeSet<ScanState> = self
            .level(l)?
            .iter()
            .filter_map(|(_, st)| self.spec.run_from(st, mu))
            .filter(|st| *st != lead)
            .collect();
        Ok(self.follower_search(lead, others, follower_depth))
    }

    fn follower_search(
        &self,
        lead: ScanState,
        others: BTreeSet<ScanState>,
        follower_depth: usize,
    ) -> SyncVerdict {
        if others.is_empty() {
            return SyncVerdict::Yes;
        }
        let mut seen: HashSet<(ScanState, BTreeSet<ScanState>)> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert((lead.clone(), others.clone()));
        queue.push_back((lead, others, Word::empty()));
        let mut truncated = false;
        while let Some((lead, others, omega)) = queue.pop_front() {
            if omega.len() >= follower_depth {
                truncated = true;
                continue;
            }
            for s in self.spec.alphabet().symbols() {
                let Some(next_lead) = self.spec.step(&lead, s) else {
                    continue;
                };
                let mut next_others = BTreeSet::new();
                for st in &others {
                    match self.spec.step(st, s) {
                        None => return SyncVerdict::No(omega.concat(&[s])),
                        Some(ns) if ns != next_lead => {
                            next_others.insert(ns);
                        }
                        Some(_) => {}
                    }
                }
                if next_others.is_empty() {
                    continue;
                }
                let key = (next_lead, next_others);
                if seen.contains(&key) {
                    continue;
                }
                if seen.len() >= self.bounds.max_states {
                    truncated = true;
                    continue;
                }
                seen.insert(key.clone());
                queue.push_back((key.0, key.1, omega.concat(&[s])));
            }
        }
        if truncated {
            SyncVerdict::Unknown
        } else {
            SyncVerdict::Yes
        }
    }

    /// Partition of `S_l(Λ)` by l-past, ordered by representative.
    pub fn sync_classes(&self, l: usize) -> Result<Vec<SyncClass>> {
        let mut by_past: BTreeMap<BTreeSet<Word>, Word> = BTreeMap::new();
        for w in self.candidates(l)? {
            if self.spec.run(&w).is_none() {
                continue;
            }
            if self.is_l_synchronizing(&w, l)? != SyncVerdict::Yes {
                continue;
            }
            let past = self.gamma_minus(&w, l)?;
            match by_past.get_mut(&past) {
                Some(rep) if w.shortlex_cmp(rep).is_lt() => *rep = w,
                Some(_) => {}
                None => {
                    by_past.insert(past, w);
                }
            }
        }
        let mut classes: Vec<SyncClass> = by_past
            .into_iter()
            .map(|(past, representative)| SyncClass {
                past,
                representative,
            })
            .collect();
        classes.sort_by(|a, b| a.representative.shortlex_cmp(&b.representative));
        Ok(classes)
    }

    /// Candidate words covering every l-past class of `S_l(Λ)`.
    fn candidates(&self, l: usize) -> Result<Vec<Word>> {
        let mut out = vec![Word::empty()];
        match &self.spec {
            SubshiftSpec::Full(_) => {}
            // Γ_l^- of a word of length ≥ m only depends on its first m symbols.
            SubshiftSpec::Sft(sft) => out.extend(self.blocks(sft.memory())?),
            SubshiftSpec::Sofic(_) => out.extend(self.relation_representatives()?),
            SubshiftSpec::Dyck(d) | SubshiftSpec::MarkovDyck(d) => {
                out.extend(closer_words(&self.spec, d, l));
            }
            SubshiftSpec::Expanded(e) => {
                // Only reached for bases without a finite presentation.
                let base = Explorer::new(e.base(), self.bounds);
                let plan = flow::ExpansionPlan::for_spec(e);
                let mut seen = BTreeSet::new();
                for k in [l, l + 1] {
                    for w in base.candidates(k)? {
                        let image = plan.expand_word(&w)?;
                        for i in 0..image.len() {
                            for j in i + 1..=image.len() {
                                seen.insert(Word::from(&image[i..j]));
                            }
                        }
                    }
                }
                out.extend(seen);
            }
        }
        Ok(out)
    }

    /// Shortlex-least word for each reachable path relation of a sofic cover.
    fn relation_representatives(&self) -> Result<Vec<Word>> {
        let SubshiftSpec::Sofic(sofic) = &self.spec else {
            return Ok(Vec::new());
        };
        let g = sofic.graph();
        type Relation = BTreeSet<(usize, usize)>;
        let start: Relation = (0..g.vertex_count()).map(|v| (v, v)).collect();
        let mut seen: HashSet<Relation> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(start, Word::empty())]);
        let mut reps = Vec::new();
        while let Some((rel, w)) = queue.pop_front() {
            for s in g.alphabet().symbols() {
                let next: Relation = rel
                    .iter()
                    .flat_map(|&(a, b)| {
                        g.edges()
                            .iter()
                            .filter(move |e| e.source == b && e.label == s)
                            .map(move |e| (a, e.target))
                    })
                    .collect();
                if next.is_empty() || seen.contains(&next) {
                    continue;
                }
                if seen.len() >= self.bounds.max_states {
                    return Err(Error::Budget {
                        level: w.len() + 1,
                        count: seen.len(),
                    });
                }
                seen.insert(next.clone());
                let nw = w.concat(&[s]);
                reps.push(nw.clone());
                queue.push_back((next, nw));
            }
        }
        Ok(reps)
    }
}

/// Admissible words of `l` closing brackets.
fn closer_words(spec: &SubshiftSpec, d: &crate::subshift::DyckSpec, l: usize) -> Vec<Word> {
    let mut words = vec![(Word::empty(), spec.initial_state())];
    for _ in 0..l {
        words = words
            .iter()
            .flat_map(|(w, st)| {
                (0..d.n()).filter_map(move |i| {
                    let s = d.closer(i);
                    spec.step(st, s).map(|ns| (w.concat(&[s]), ns))
                })
            })
            .collect();
    }
    words.into_iter().map(|(w, _)| w).collect()
}

pub fn blocks(spec: &SubshiftSpec, l: usize, bounds: Bounds) -> Result<Vec<Word>> {
    Explorer::new(spec, bounds).blocks(l)
}

pub fn gamma_minus(spec: &SubshiftSpec, mu: &[Symbol], l: usize, bounds: Bounds) -> Result<BTreeSet<Word>> {
    Explorer::new(spec, bounds).gamma_minus(mu, l)
}

pub fn gamma_plus(spec: &SubshiftSpec, mu: &[Symbol], l: usize, bounds: Bounds) -> Result<BTreeSet<Word>> {
    Explorer::new(spec, bounds).gamma_plus(mu, l)
}

pub fn is_l_synchronizing(
    spec: &SubshiftSpec,
    mu: &[Symbol],
    l: usize,
    follower_depth: usize,
) -> Result<SyncVerdict> {
    Explorer::new(spec, Bounds::default()).is_l_synchronizing_with(mu, l, follower_depth)
}

pub fn sync_classes(spec: &SubshiftSpec, l: usize, bounds: Bounds) -> Result<Vec<SyncClass>> {
    Explorer::new(spec, bounds).sync_classes(l)
}
