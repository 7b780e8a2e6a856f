use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::matrix::{smith_normal_form, IntMatrix};

/// `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `1 < t_1 | t_2 | … | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^rank ⊕ ⨁ Z/c_i` for arbitrary integers `c_i`; a zero `c_i` adds a
    /// free summand and units vanish.
    pub fn new(rank: usize, cyclic: &[BigInt]) -> Self {
        let snf = smith_normal_form(&IntMatrix::diagonal(cyclic));
        let mut g = AbelianGroup::from_invariant_factors(snf.diagonal(), cyclic.len());
        g.rank += rank;
        g
    }

    /// Cokernel shape from a Smith diagonal over `rows` generators.
    pub(crate) fn from_invariant_factors(diagonal: Vec<BigInt>, rows: usize) -> Self {
        let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
        AbelianGroup {
            rank: rows - nonzero,
            torsion: diagonal
                .into_iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .map(|d| d.abs())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// JSON form `{"rank": r, "torsion": [d1, …]}`; factors beyond `u64`
    /// are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self
            .torsion
            .iter()
            .map(|t| match t.to_u64() {
                Some(x) => json!(x),
                None => json!(t.to_string()),
            })
            .collect();
        json!({ "rank": self.rank, "torsion": torsion })
    }
}

/// Complete invariant comparison for finitely generated abelian groups.
pub fn groups_isomorphic(g1: &AbelianGroup, g2: &AbelianGroup) -> bool {
    g1 == g2
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}Z")));
        f.write_str(&parts.join(" ⊕ "))
    }
}
