use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, ordered set of named symbols. Ids are dense `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Invalid("alphabet must not be empty".into()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        let mut owned = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref().trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad symbol name {name:?}")));
            }
            if lookup.insert(name.to_string(), Symbol(i as u32)).is_some() {
                return Err(Error::Invalid(format!("duplicate symbol name {name:?}")));
            }
            owned.push(name.to_string());
        }
        Ok(Alphabet { names: owned, lookup })
    }

    /// `"0", "1", …, "n-1"`.
    pub fn numbered(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Alphabet::new(&names).expect("numbered names are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol)
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.names.len()
    }

    /// Looks a symbol up by its display name. Greek spellings such as
    /// `α_1`/`β_2` are accepted for the `a1`/`b2` bracket names.
    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        let name = name.trim();
        if let Some(s) = self.lookup.get(name) {
            return Ok(*s);
        }
        let ascii = name
            .replace("α_", "a")
            .replace("β_", "b")
            .replace('α', "a")
            .replace('β', "b");
        self.lookup
            .get(&ascii)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Parses a space separated sequence of display names.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace().map(|t| self.symbol(t)).collect()
    }

    pub fn check_word(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().find(|s| !self.contains(**s)) {
            Some(s) => Err(Error::UnknownSymbol(format!("#{}", s.0))),
            None => Ok(()),
        }
    }

    pub fn display_word(&self, w: &[Symbol]) -> String {
        w.iter().map(|s| self.name(*s)).collect::<Vec<_>>().join(" ")
    }

    /// Returns a copy with one extra symbol appended at index `len`.
    pub fn extended(&self, fresh: &str) -> Result<Alphabet> {
        let mut names = self.names.clone();
        names.push(fresh.to_string());
        Alphabet::new(&names)
    }
}

/// A finite word over an alphabet. The empty word is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn prepend(&self, s: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(s);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// Whether `needle` occurs as a contiguous factor.
    pub fn contains_factor(&self, needle: &[Symbol]) -> bool {
        needle.is_empty() || self.0.windows(needle.len()).any(|w| w == needle)
    }

    /// Order by length first, then lexicographically.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl std::ops::Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| format!("#{}", s.0)).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_greek_aliases() {
        let a = Alphabet::new(&["a1", "a2", "b1", "b2"]).unwrap();
        assert_eq!(a.symbol("b1").unwrap(), Symbol(2));
        assert_eq!(a.symbol("β_1").unwrap(), Symbol(2));
        assert_eq!(a.symbol("α_2").unwrap(), Symbol(1));
        assert!(a.symbol("c").is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Alphabet::new(&["x", "x"]).is_err());
        assert!(Alphabet::new::<&str>(&[]).is_err());
    }

    #[test]
    fn parse_word_roundtrip() {
        let a = Alphabet::numbered(3);
        let w = a.parse_word("0 2 1").unwrap();
        assert_eq!(a.display_word(&w), "0 2 1");
        assert!(a.parse_word("").unwrap().is_empty());
    }
}
