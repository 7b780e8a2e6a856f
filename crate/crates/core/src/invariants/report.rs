use std::fmt::Write as _;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::matrix::{determinant, kernel_basis, smith_normal_form, solve_with, IntMatrix};
use super::{cokernel, cokernel_and_kernel, AbelianGroup};
use crate::error::{Error, Result};
use crate::lambda::{transition_matrices, LambdaGraphSystem, TransitionMatrices};
use crate::Tri;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelGroups {
    pub k0: AbelianGroup,
    pub k1: AbelianGroup,
    pub bf0: AbelianGroup,
    pub bf1: AbelianGroup,
}

impl LevelGroups {
    fn same_shape(&self, other: &LevelGroups) -> bool {
        self == other
    }
}

/// `I_l^t − A_l^t`, a map `Z^{m(l)} → Z^{m(l+1)}`.
fn k_matrix(tm: &TransitionMatrices, l: usize) -> Result<IntMatrix> {
    tm.i[l].transpose().sub(&tm.a[l].transpose())
}

pub fn level_groups(tm: &TransitionMatrices, l: usize) -> Result<LevelGroups> {
    if l >= tm.a.len() {
        return Err(Error::Dimension(format!(
            "level {l} needs transition matrices up to {}",
            l + 1
        )));
    }
    let m = k_matrix(tm, l)?;
    let bf = tm.i[l].sub(&tm.a[l])?;
    let (k0, k1) = cokernel_and_kernel(&m);
    let (bf0, bf1) = cokernel_and_kernel(&bf);
    Ok(LevelGroups { k0, k1, bf0, bf1 })
}

/// Data of the connecting maps from level `l` to `l + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingMap {
    pub level: usize,
    /// `A_l I_{l+1} = I_l A_{l+1}`.
    pub identity_holds: bool,
    /// `I_{l+1}^t` maps the relations of `K0_l` into those of `K0_{l+1}`.
    pub k0_well_defined: bool,
    pub k0_iso: bool,
    pub k1_iso: bool,
    /// `I_{l+1}^t`, the matrix of the `K0` map on generators.
    pub matrix: IntMatrix,
}

fn connecting_map(tm: &TransitionMatrices, l: usize) -> Result<ConnectingMap> {
    if l + 1 >= tm.a.len() {
        return Err(Error::Dimension(format!(
            "connecting map at level {l} needs matrices up to level {}",
            l + 2
        )));
    }
    let identity_holds = tm.a[l].mul(&tm.i[l + 1])? == tm.i[l].mul(&tm.a[l + 1])?;
    let phi = tm.i[l + 1].transpose();
    let m_l = k_matrix(tm, l)?;
    let m_next = k_matrix(tm, l + 1)?;
    let snf_next = smith_normal_form(&m_next);
    let image = phi.mul(&m_l)?;
    let mut k0_well_defined = true;
    for j in 0..image.cols() {
        if solve_with(&snf_next, &image.column(j))?.is_none() {
            k0_well_defined = false;
            break;
        }
    }
    let k0_iso = k0_well_defined && {
        let surjective = cokernel(&phi.hstack(&m_next)?).is_trivial();
        surjective && cokernel(&m_l) == cokernel(&m_next)
    };
    let k1_iso = identity_holds && kernel_map_is_iso(&m_l, &m_next, &tm.i[l].transpose())?;
    Ok(ConnectingMap {
        level: l,
        identity_holds,
        k0_well_defined,
        k0_iso,
        k1_iso,
        matrix: phi,
    })
}

/// Whether `x ↦ P x` restricts to an isomorphism `ker M → ker N`.
fn kernel_map_is_iso(m: &IntMatrix, n: &IntMatrix, p: &IntMatrix) -> Result<bool> {
    let km = kernel_basis(m);
    let kn = kernel_basis(n);
    if km.cols() != kn.cols() {
        return Ok(false);
    }
    if km.cols() == 0 {
        return Ok(true);
    }
    let image = p.mul(&km)?;
    let snf = smith_normal_form(&kn);
    let mut coords = Vec::with_capacity(km.cols());
    for j in 0..image.cols() {
        match solve_with(&snf, &image.column(j))? {
            Some(c) => coords.push(c),
            None => return Ok(false),
        }
    }
    let r = km.cols();
    let mut c = IntMatrix::zeros(r, r);
    for (j, col) in coords.into_iter().enumerate() {
        for (i, x) in col.into_iter().enumerate() {
            c.set(i, j, x);
        }
    }
    Ok(determinant(&c)?.abs().is_one())
}

/// The matrix identity plus well-definedness of the `K0` connecting map.
pub fn connecting_map_check(tm: &TransitionMatrices, l: usize) -> Result<bool> {
    let cm = connecting_map(tm, l)?;
    Ok(cm.identity_holds && cm.k0_well_defined)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub levels: Vec<LevelGroups>,
    pub maps: Vec<ConnectingMap>,
    /// `Yes` once group shapes are constant and the connecting maps are
    /// isomorphisms from `stable_from` to the last computed level. A finite
    /// window never refutes stabilization, so `No` is not produced.
    pub stabilized: Tri,
    pub stable_from: Option<usize>,
}

impl InvariantReport {
    pub fn stable_groups(&self) -> Option<&LevelGroups> {
        self.stable_from.map(|l| &self.levels[l])
    }

    /// `K0` free rank strictly increases from level 1 on.
    pub fn free_rank_growing(&self) -> bool {
        let ranks: Vec<usize> = self.levels.iter().skip(1).map(|g| g.k0.rank()).collect();
        ranks.len() >= 2 && ranks.windows(2).all(|w| w[0] < w[1])
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(l, g)| {
                json!({
                    "level": l,
                    "K0": g.k0.to_json(),
                    "K1": g.k1.to_json(),
                    "BF0": g.bf0.to_json(),
                    "BF1": g.bf1.to_json(),
                })
            })
            .collect();
        let maps: Vec<Value> = self
            .maps
            .iter()
            .map(|m| {
                json!({
                    "level": m.level,
                    "identity_holds": m.identity_holds,
                    "k0_well_defined": m.k0_well_defined,
                    "k0_iso": m.k0_iso,
                    "k1_iso": m.k1_iso,
                    "matrix": m.matrix.to_string(),
                })
            })
            .collect();
        json!({
            "levels": levels,
            "connecting_maps": maps,
            "stabilized": self.stabilized.to_string(),
            "stable_from": self.stable_from,
            "free_rank_growing": self.free_rank_growing(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<6} {:<20} {:<12} {:<20} {:<12}", "level", "K0", "K1", "BF0", "BF1");
        for (l, g) in self.levels.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:<6} {:<20} {:<12} {:<20} {:<12}",
                l,
                g.k0.to_string(),
                g.k1.to_string(),
                g.bf0.to_string(),
                g.bf1.to_string()
            );
        }
        for m in &self.maps {
            let _ = writeln!(
                out,
                "map {}->{}: identity {}, K0 map {}, K1 map {}",
                m.level,
                m.level + 1,
                if m.identity_holds { "holds" } else { "FAILS" },
                if !m.k0_well_defined {
                    "ill-defined"
                } else if m.k0_iso {
                    "iso"
                } else {
                    "not iso"
                },
                if m.k1_iso { "iso" } else { "not iso" },
            );
        }
        match (self.stabilized, self.stable_groups()) {
            (Tri::Yes, Some(g)) => {
                let _ = writeln!(
                    out,
                    "stabilized at level {}: K0 = {}, K1 = {}, BF0 = {}, BF1 = {}",
                    self.stable_from.unwrap_or(0),
                    g.k0,
                    g.k1,
                    g.bf0,
                    g.bf1
                );
            }
            _ => {
                let _ = writeln!(out, "stabilized: {}", self.stabilized);
                let torsion: Vec<_> = self.levels.iter().map(|g| g.k0.torsion()).collect();
                let constant = torsion.windows(2).all(|w| w[0] == w[1]);
                match (constant, self.free_rank_growing()) {
                    (true, true) => {
                        let t = AbelianGroup::new(0, torsion.first().copied().unwrap_or_default());
                        let _ = writeln!(out, "K0: torsion {t} per level, free rank growing (unbounded, consistent with C(K,Z))");
                    }
                    (false, true) => {
                        let _ = writeln!(out, "K0: free rank growing (unbounded, consistent with C(K,Z))");
                    }
                    _ => {}
                }
            }
        }
        out
    }
}

/// Groups for levels `0..levels` and the connecting maps between them.
pub fn invariant_report(sys: &LambdaGraphSystem, levels: usize) -> Result<InvariantReport> {
    if levels == 0 || levels > sys.depth() {
        return Err(Error::Dimension(format!(
            "{levels} group levels need a system of depth at least {levels}, got {}",
            sys.depth()
        )));
    }
    let tm = transition_matrices(sys);
    let groups = (0..levels)
        .map(|l| level_groups(&tm, l))
        .collect::<Result<Vec<_>>>()?;
    let maps = (0..levels.saturating_sub(1))
        .map(|l| connecting_map(&tm, l))
        .collect::<Result<Vec<_>>>()?;
    let last = levels - 1;
    let stable_from = (0..last).find(|&s| {
        (s..=last).all(|l| groups[l].same_shape(&groups[s]))
            && maps[s..].iter().all(|m| m.identity_holds && m.k0_iso && m.k1_iso)
    });
    Ok(InvariantReport {
        levels: groups,
        maps,
        stabilized: if stable_from.is_some() { Tri::Yes } else { Tri::Unknown },
        stable_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::lambda::{build_cantor_horizon_dyck, build_from_finite_graph};
    use crate::subshift::LabeledGraph;
    use num_bigint::BigInt;

    fn full_shift_graph(n: usize) -> LambdaGraphSystem {
        let a = Alphabet::numbered(n);
        let edges: Vec<(usize, String, usize)> = (0..n).map(|i| (0, i.to_string(), 0)).collect();
        let triples: Vec<(usize, &str, usize)> = edges.iter().map(|(s, l, t)| (*s, l.as_str(), *t)).collect();
        let g = LabeledGraph::from_triples(a, 1, &triples).unwrap();
        build_from_finite_graph(&g, 5).unwrap()
    }

    #[test]
    fn golden_mean_is_trivial_and_stable() {
        let g = LabeledGraph::from_triples(
            Alphabet::numbered(2),
            2,
            &[(0, "0", 0), (1, "1", 0), (0, "0", 1)],
        )
        .unwrap();
        let r = invariant_report(&build_from_finite_graph(&g, 5).unwrap(), 4).unwrap();
        assert_eq!(r.stabilized, Tri::Yes);
        assert_eq!(r.stable_from, Some(0));
        for lg in &r.levels {
            assert!(lg.k0.is_trivial() && lg.k1.is_trivial() && lg.bf0.is_trivial() && lg.bf1.is_trivial());
        }
    }

    #[test]
    fn full_shifts() {
        for n in 2..=5usize {
            let r = invariant_report(&full_shift_graph(n), 4).unwrap();
            let g = r.stable_groups().unwrap();
            assert_eq!(g.k0, AbelianGroup::new(0, &[BigInt::from(n - 1)]));
            assert!(g.k1.is_trivial());
        }
        let r = invariant_report(&full_shift_graph(3), 4).unwrap();
        assert_eq!(r.stable_groups().unwrap().k0.to_string(), "Z/2Z");
    }

    #[test]
    fn dyck_levels_keep_torsion_and_grow() {
        let r = invariant_report(&build_cantor_horizon_dyck(2, 6).unwrap(), 5).unwrap();
        for lg in &r.levels {
            assert_eq!(lg.k0.torsion(), &[BigInt::from(2)]);
            assert!(lg.k1.is_trivial());
        }
        assert!(r.free_rank_growing());
        assert_eq!(r.stabilized, Tri::Unknown);
        assert!(r.maps.iter().all(|m| m.identity_holds && m.k0_well_defined));
    }

    #[test]
    fn corrupted_iota_fails_the_check() {
        let sys = build_cantor_horizon_dyck(2, 4).unwrap();
        let mut tm = transition_matrices(&sys);
        assert!((0..3).all(|l| connecting_map_check(&tm, l).unwrap()));
        let x = tm.i[1].get(0, 0).clone();
        let y = tm.i[1].get(1, 0).clone();
        tm.i[1].set(0, 0, y);
        tm.i[1].set(1, 0, x);
        assert!(!connecting_map_check(&tm, 0).unwrap() || !connecting_map_check(&tm, 1).unwrap());
    }

    #[test]
    fn report_needs_enough_depth() {
        assert!(invariant_report(&full_shift_graph(2), 6).is_err());
        assert!(invariant_report(&full_shift_graph(2), 0).is_err());
    }
}
