use std::collections::{BTreeSet, HashSet};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// A shift of finite type given by forbidden words.
///
/// The forbidden set is normalized (no forbidden word contains another as a
/// factor). Admissibility is decided against the essential core of the
/// window graph, so only words that sit inside some bi-infinite point count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftSpec {
    alphabet: Alphabet,
    forbidden: Vec<Word>,
    window: usize,
    /// Prefixes (of every length `0..=window`) of core window blocks.
    core_prefixes: HashSet<Vec<Symbol>>,
}

impl SftSpec {
    pub fn new(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        for f in &forbidden {
            alphabet.check_word(f)?;
            if f.is_empty() {
                return Err(Error::Invalid("the empty word cannot be forbidden".into()));
            }
        }
        let forbidden = normalize_forbidden(forbidden);
        let memory = forbidden.iter().map(|f| f.len()).max().unwrap_or(1) - 1;
        let window = memory.max(1);
        let core = essential_core(&alphabet, &forbidden, window);
        if core.is_empty() {
            return Err(Error::Invalid("forbidden words leave an empty subshift".into()));
        }
        let mut core_prefixes = HashSet::new();
        for block in &core {
            for k in 0..=block.len() {
                core_prefixes.insert(block[..k].to_vec());
            }
        }
        Ok(SftSpec {
            alphabet,
            forbidden,
            window,
            core_prefixes,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Word] {
        &self.forbidden
    }

    /// `max forbidden length - 1`, or 0 for the full shift.
    pub fn memory(&self) -> usize {
        self.forbidden.iter().map(|f| f.len()).max().unwrap_or(1) - 1
    }

    /// Scanner step: `state` holds the last `min(len, window)` symbols read.
    pub(crate) fn step(&self, state: &[Symbol], s: Symbol) -> Option<Vec<Symbol>> {
        let mut w = Vec::with_capacity(state.len() + 1);
        w.extend_from_slice(state);
        w.push(s);
        if self.forbidden.iter().any(|f| w.ends_with(f)) {
            return None;
        }
        if w.len() > self.window {
            w.remove(0);
        }
        self.core_prefixes.contains(&w).then_some(w)
    }
}

pub(crate) fn normalize_forbidden(words: Vec<Word>) -> Vec<Word> {
    let unique: BTreeSet<Word> = words.into_iter().collect();
    let mut kept: Vec<Word> = unique
        .iter()
        .filter(|f| {
            !unique
                .iter()
                .any(|g| g != *f && g.len() <= f.len() && f.contains_factor(g))
        })
        .cloned()
        .collect();
    kept.sort_by(|a, b| a.shortlex_cmp(b));
    kept
}

/// Window blocks (length `window`) lying on a bi-infinite path of the window graph.
fn essential_core(alphabet: &Alphabet, forbidden: &[Word], window: usize) -> BTreeSet<Vec<Symbol>> {
    let avoids = |w: &[Symbol]| {
        let w = Word::from(w);
        !forbidden.iter().any(|f| w.contains_factor(f))
    };
    let mut blocks: Vec<Vec<Symbol>> = vec![Vec::new()];
    for _ in 0..window {
        blocks = blocks
            .iter()
            .flat_map(|b| {
                alphabet.symbols().map(move |s| {
                    let mut nb = b.clone();
                    nb.push(s);
                    nb
                })
            })
            .filter(|b| avoids(b))
            .collect();
    }
    let mut core: BTreeSet<Vec<Symbol>> = blocks.into_iter().collect();
    let edge = |a: &[Symbol], s: Symbol| {
        let mut w = a.to_vec();
        w.push(s);
        avoids(&w).then(|| w[1..].to_vec())
    };
    loop {
        let mut has_in: HashSet<Vec<Symbol>> = HashSet::new();
        let mut has_out: HashSet<Vec<Symbol>> = HashSet::new();
        for b in &core {
            for s in alphabet.symbols() {
                if let Some(next) = edge(b, s) {
                    if core.contains(&next) {
                        has_out.insert(b.clone());
                        has_in.insert(next);
                    }
                }
            }
        }
        let before = core.len();
        core.retain(|b| has_in.contains(b) && has_out.contains(b));
        if core.len() == before {
            return core;
        }
    }
}
