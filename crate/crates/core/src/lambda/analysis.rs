//! Follower, launching and irreducibility analyses on truncated systems.
//!
//! Every "for all l" statement is checked only for the levels that the
//! truncation can see. Negative answers are given only when they are
//! provable: for stationary systems (the embedding of one finite graph) the
//! level-wise searches are searches on a finite graph and close up.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::builders::build_auto;
use super::LambdaGraphSystem;
use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::language::{Bounds, Explorer};
use crate::subshift::SubshiftSpec;
use crate::Tri;

/// A tri-state verdict with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Tri,
    pub witness: Option<String>,
}

impl Decision {
    fn yes() -> Self {
        Decision {
            verdict: Tri::Yes,
            witness: None,
        }
    }

    fn with(verdict: Tri, witness: impl Into<String>) -> Self {
        Decision {
            verdict,
            witness: Some(witness.into()),
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{} ({w})", self.verdict),
            None => write!(f, "{}", self.verdict),
        }
    }
}

fn any(set: &[bool]) -> bool {
    set.iter().any(|&b| b)
}

fn members(set: &[bool]) -> Vec<usize> {
    set.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

fn singleton(n: usize, v: usize) -> Vec<bool> {
    let mut s = vec![false; n];
    s[v] = true;
    s
}

/// Vertices of `V_{l+1}` reached from `set ⊆ V_l` by one edge of any label.
fn step_any(sys: &LambdaGraphSystem, l: usize, set: &[bool]) -> Vec<bool> {
    let mut next = vec![false; sys.level_size(l + 1)];
    for e in sys.edges(l) {
        if set[e.source] {
            next[e.target] = true;
        }
    }
    next
}

fn out_labels(sys: &LambdaGraphSystem, l: usize, set: &[bool]) -> BTreeSet<Symbol> {
    sys.edges(l).iter().filter(|e| set[e.source]).map(|e| e.label).collect()
}

fn vertex(sys: &LambdaGraphSystem, l: usize, v: usize) -> String {
    format!("{} in V_{l}", sys.levels()[l].names[v])
}

/// `V^p_{t(w)}`: terminal vertices in `V_{|w|}` of `w`-labeled paths from `V_0`.
pub fn terminal_set(sys: &LambdaGraphSystem, w: &[Symbol]) -> Result<Vec<bool>> {
    if w.len() > sys.depth() {
        return Err(Error::Depth {
            len: w.len(),
            depth: sys.depth(),
        });
    }
    Ok(sys.follow(0, &vec![true; sys.level_size(0)], w))
}

fn readable_terminal(sys: &LambdaGraphSystem, w: &[Symbol]) -> Result<Vec<bool>> {
    let t = terminal_set(sys, w)?;
    if !any(&t) {
        return Err(Error::Invalid(format!(
            "{:?} is not the label of a path from V_0",
            sys.display_word(w)
        )));
    }
    Ok(t)
}

/// Decides `Γ^+(ξ) = Γ^+(η)` by comparing `V^q_{t(η)}` with the ι-preimage of
/// `V^p_{t(ξ)}` in `V_q`, where `p ≤ q` are the two lengths.
pub fn follower_equal(sys: &LambdaGraphSystem, xi: &[Symbol], eta: &[Symbol]) -> Result<bool> {
    let (short, long) = if xi.len() <= eta.len() { (xi, eta) } else { (eta, xi) };
    let (p, q) = (short.len(), long.len());
    let ts = readable_terminal(sys, short)?;
    let tl = readable_terminal(sys, long)?;
    Ok((0..sys.level_size(q)).all(|v| ts[sys.iota_pow(q, v, q - p)] == tl[v]))
}

/// Searches `η` with `|η| ≤ bound` and `Γ^+(ν) = Γ^+(μην)`.
///
/// The witness of a `Yes` is `η`. `No` is returned only for stationary
/// systems once every reachable terminal set of `μη` has been tried.
pub fn succ_relation(
    sys: &LambdaGraphSystem,
    mu: &[Symbol],
    nu: &[Symbol],
    bound: usize,
) -> Result<Decision> {
    let start = readable_terminal(sys, mu)?;
    readable_terminal(sys, nu)?;
    let room = sys.depth().saturating_sub(mu.len() + nu.len());
    let stationary = sys.is_stationary();
    let mut seen: HashSet<Vec<bool>> = HashSet::from([start.clone()]);
    let mut frontier = vec![(Word::empty(), start)];
    let limit = bound.min(room);
    let mut exhausted = false;
    for k in 0..=limit {
        let level = mu.len() + k;
        for (eta, set) in &frontier {
            if !any(&sys.follow(level, set, nu)) {
                continue;
            }
            let word = Word::from(mu).concat(eta).concat(nu);
            if follower_equal(sys, nu, &word)? {
                let shown = if eta.is_empty() { "∅".to_string() } else { sys.display_word(eta) };
                return Ok(Decision::with(Tri::Yes, format!("η = {shown}")));
            }
        }
        if k == limit {
            break;
        }
        let mut level_seen: HashSet<Vec<bool>> = HashSet::new();
        let mut next = Vec::new();
        for (eta, set) in &frontier {
            for s in out_labels(sys, level, set) {
                let t = sys.follow(level, set, &[s]);
                let fresh = if stationary { seen.insert(t.clone()) } else { level_seen.insert(t.clone()) };
                if fresh {
                    next.push((eta.concat(&[s]), t));
                }
            }
        }
        if next.is_empty() {
            exhausted = true;
            break;
        }
        frontier = next;
    }
    let pair = format!("{} ≻ {}", sys.display_word(mu), sys.display_word(nu));
    if stationary && exhausted {
        Ok(Decision::with(Tri::No, format!("{pair} fails for every η")))
    } else {
        Ok(Decision::with(
            Tri::Unknown,
            format!("{pair}: no η of length ≤ {limit} found"),
        ))
    }
}

/// Outcome of the pairwise `≻` search and the condition (I) check that
/// together predict simplicity of the associated C*-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub depth: usize,
    pub pairs: usize,
    pub transitive: Decision,
    pub condition_i: Decision,
    /// `Yes` when both hypotheses hold, `No` when one of them is refuted.
    pub simplicity_predicted: Tri,
}

/// Checks `μ ≻ ν` for all ordered pairs of admissible words of length
/// `1..=word_len`, with `|η| ≤ bound`, on a system of depth
/// `2·word_len + bound`. Condition (I) is searched to `word_len + bound`.
pub fn check_synchronizingly_transitive(
    spec: &SubshiftSpec,
    word_len: usize,
    bound: usize,
    bounds: Bounds,
) -> Result<TransitivityReport> {
    let depth = (2 * word_len + bound).max(1);
    let sys = build_auto(spec, depth, bounds)?;
    let ex = Explorer::new(spec, bounds);
    let mut words = Vec::new();
    for k in 1..=word_len {
        words.extend(ex.blocks(k)?);
    }
    let mut transitive = Decision::yes();
    let mut pairs = 0;
    'outer: for mu in &words {
        for nu in &words {
            pairs += 1;
            let d = succ_relation(&sys, mu, nu, bound)?;
            match d.verdict {
                Tri::Yes => {}
                Tri::No => {
                    transitive = d;
                    break 'outer;
                }
                Tri::Unknown => {
                    if transitive.verdict == Tri::Yes {
                        transitive = d;
                    }
                }
            }
        }
    }
    let condition_i = check_condition_i(&sys, (word_len + bound).clamp(1, depth));
    let simplicity_predicted = match (transitive.verdict, condition_i.verdict) {
        (Tri::Yes, Tri::Yes) => Tri::Yes,
        (Tri::No, _) | (_, Tri::No) => Tri::No,
        _ => Tri::Unknown,
    };
    Ok(TransitivityReport {
        depth,
        pairs,
        transitive,
        condition_i,
        simplicity_predicted,
    })
}

/// Every vertex of the inspected levels `0..=L-depth` must read two distinct
/// words within `depth` steps.
///
/// A vertex whose words form a single path is refuted only in a stationary
/// system, once the set of reached vertices repeats.
pub fn check_condition_i(sys: &LambdaGraphSystem, depth: usize) -> Decision {
    let depth = depth.min(sys.depth());
    let stationary = sys.is_stationary();
    let mut unknown = None;
    for l in 0..=sys.depth() - depth {
        for v in 0..sys.level_size(l) {
            let mut set = singleton(sys.level_size(l), v);
            let mut seen = HashSet::from([set.clone()]);
            let mut branched = false;
            for k in 0..depth {
                let labels = out_labels(sys, l + k, &set);
                match labels.len() {
                    0 => {
                        return Decision::with(Tri::No, format!("{} reads no infinite word", vertex(sys, l, v)));
                    }
                    1 => {
                        let s = *labels.iter().next().expect("one label");
                        set = sys.follow(l + k, &set, &[s]);
                        if stationary && !seen.insert(set.clone()) {
                            return Decision::with(
                                Tri::No,
                                format!("{} reads a single periodic sequence", vertex(sys, l, v)),
                            );
                        }
                    }
                    _ => {
                        branched = true;
                        break;
                    }
                }
            }
            if !branched && unknown.is_none() {
                unknown = Some(format!("{} has a single path to depth {depth}", vertex(sys, l, v)));
            }
        }
    }
    match unknown {
        Some(w) => Decision::with(Tri::Unknown, w),
        None => Decision::yes(),
    }
}

fn levels_with_room(sys: &LambdaGraphSystem, bound: usize) -> std::ops::RangeInclusive<usize> {
    0..=sys.depth().saturating_sub(bound)
}

fn reachable_in_graph(sys: &LambdaGraphSystem, from: usize) -> Vec<bool> {
    let mut seen = vec![false; sys.level_size(0)];
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for e in sys.edges(0).iter().filter(|e| e.source == x) {
            if !seen[e.target] {
                seen[e.target] = true;
                stack.push(e.target);
            }
        }
    }
    seen
}

/// For `u, v ∈ V_l`: some `K ≤ bound` such that every `w ∈ V_{l+K}` above
/// `u` is reached from `v` by a path of length `K`.
///
/// Stationary systems are decided exactly by reachability in the graph.
pub fn check_lambda_irreducible(sys: &LambdaGraphSystem, bound: usize) -> Decision {
    if sys.is_stationary() {
        return stationary_reachability(sys, true);
    }
    for l in levels_with_room(sys, bound) {
        let n = sys.level_size(l);
        for v in 0..n {
            let mut reach = vec![singleton(n, v)];
            for k in 0..bound.min(sys.depth() - l) {
                let next = step_any(sys, l + k, &reach[k]);
                reach.push(next);
            }
            for u in 0..n {
                let found = (1..reach.len()).any(|k| {
                    (0..sys.level_size(l + k))
                        .all(|w| sys.iota_pow(l + k, w, k) != u || reach[k][w])
                });
                if !found {
                    return Decision::with(
                        Tri::Unknown,
                        format!(
                            "from {} the lifts of {} are not covered within {bound} steps",
                            vertex(sys, l, v),
                            sys.levels()[l].names[u]
                        ),
                    );
                }
            }
        }
    }
    Decision::yes()
}

fn stationary_reachability(sys: &LambdaGraphSystem, strict: bool) -> Decision {
    let n = sys.level_size(0);
    for v in 0..n {
        let r = reachable_in_graph(sys, v);
        for (u, &reached) in r.iter().enumerate() {
            if !reached && (strict || u != v) {
                return Decision::with(
                    Tri::No,
                    format!("no path from {} to {}", sys.levels()[0].names[v], sys.levels()[0].names[u]),
                );
            }
        }
    }
    Decision::yes()
}

/// Words read from `u ∈ V_l` together with each terminal vertex.
fn paths_from(sys: &LambdaGraphSystem, l: usize, u: usize, max_len: usize) -> Vec<(Word, usize)> {
    let mut out = vec![(Word::empty(), u)];
    let mut frontier = out.clone();
    for k in 0..max_len {
        let mut next = Vec::new();
        for (w, x) in &frontier {
            for e in sys.edges(l + k).iter().filter(|e| e.source == *x) {
                next.push((w.concat(&[e.label]), e.target));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// For `u, v ∈ V_l` and each path `γ` from `u`: some `n` and `u' ∈ V_{l+n}`
/// over `u`, reached from `v`, reading `λ(γ)` to a vertex over `t(γ)`.
/// Searched with `|γ| ≤ bound` and `n ≤ bound` on levels `0..=L-2·bound`.
pub fn check_iota_irreducible(sys: &LambdaGraphSystem, bound: usize) -> Decision {
    if sys.is_stationary() {
        return stationary_reachability(sys, false);
    }
    for l in 0..=sys.depth().saturating_sub(2 * bound) {
        let n = sys.level_size(l);
        let room = sys.depth() - l;
        let reach: Vec<Vec<Vec<bool>>> = (0..n)
            .map(|v| {
                let mut r = vec![singleton(n, v)];
                for k in 0..bound.min(room) {
                    let next = step_any(sys, l + k, &r[k]);
                    r.push(next);
                }
                r
            })
            .collect();
        for u in 0..n {
            for (gamma, end) in paths_from(sys, l, u, bound.min(room)) {
                let k = gamma.len();
                for (v, reach_v) in reach.iter().enumerate() {
                    let ok = (0..=bound.min(room - k)).any(|m| {
                        (0..sys.level_size(l + m))
                            .filter(|&w| reach_v[m][w] && sys.iota_pow(l + m, w, m) == u)
                            .any(|w| {
                                let t = sys.follow(l + m, &singleton(sys.level_size(l + m), w), &gamma);
                                members(&t).into_iter().any(|x| sys.iota_pow(l + m + k, x, m) == end)
                            })
                    });
                    if !ok {
                        return Decision::with(
                            Tri::Unknown,
                            format!(
                                "path {:?} from {} not matched from {} within {bound}",
                                sys.display_word(&gamma),
                                vertex(sys, l, u),
                                sys.levels()[l].names[v]
                            ),
                        );
                    }
                }
            }
        }
    }
    Decision::yes()
}

/// The unique vertex of `V_l` that emits a `ν`-labeled path, if any.
pub fn launching_vertex(sys: &LambdaGraphSystem, nu: &[Symbol], l: usize) -> Result<Option<usize>> {
    if l > sys.depth() || nu.len() > sys.depth() - l {
        return Err(Error::Depth {
            len: nu.len(),
            depth: sys.depth().saturating_sub(l),
        });
    }
    let n = sys.level_size(l);
    let mut launching = (0..n).filter(|&v| any(&sys.follow(l, &singleton(n, v), nu)));
    Ok(match (launching.next(), launching.next()) {
        (Some(v), None) => Some(v),
        _ => None,
    })
}

/// Every vertex of levels `0..=L-depth` launches some word of length
/// `≤ depth`. Searched as a breadth-first walk over pairs (reached from `v`,
/// reached from the other vertices).
pub fn is_lambda_synchronizing_system(sys: &LambdaGraphSystem, depth: usize) -> Decision {
    let depth = depth.min(sys.depth());
    let stationary = sys.is_stationary();
    let mut unknown = None;
    for l in 0..=sys.depth() - depth {
        let n = sys.level_size(l);
        for v in 0..n {
            let mut others = vec![true; n];
            others[v] = false;
            let start = (singleton(n, v), others);
            let mut seen = HashSet::from([start.clone()]);
            let mut frontier = vec![start];
            let mut found = false;
            for k in 0..=depth {
                if frontier.iter().any(|(_, o)| !any(o)) {
                    found = true;
                    break;
                }
                if k == depth {
                    break;
                }
                let mut level_seen = HashSet::new();
                let mut next = Vec::new();
                for (mine, rest) in &frontier {
                    for s in out_labels(sys, l + k, mine) {
                        let pair = (sys.follow(l + k, mine, &[s]), sys.follow(l + k, rest, &[s]));
                        let fresh = if stationary { seen.insert(pair.clone()) } else { level_seen.insert(pair.clone()) };
                        if fresh {
                            next.push(pair);
                        }
                    }
                }
                frontier = next;
                if frontier.is_empty() {
                    break;
                }
            }
            if found {
                continue;
            }
            if stationary && frontier.is_empty() {
                return Decision::with(Tri::No, format!("{} launches no word", vertex(sys, l, v)));
            }
            if unknown.is_none() {
                unknown = Some(format!(
                    "{} launches no word of length ≤ {depth}",
                    vertex(sys, l, v)
                ));
            }
        }
    }
    match unknown {
        Some(w) => Decision::with(Tri::Unknown, w),
        None => Decision::yes(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::lambda::{build_cantor_horizon_dyck, build_from_finite_graph, build_lambda_synchronizing};
    use crate::subshift::LabeledGraph;

    fn golden() -> LambdaGraphSystem {
        let g = LabeledGraph::from_triples(
            Alphabet::numbered(2),
            2,
            &[(0, "0", 0), (1, "1", 0), (0, "0", 1)],
        )
        .unwrap();
        build_from_finite_graph(&g, 6).unwrap()
    }

    fn w(sys: &LambdaGraphSystem, text: &str) -> Word {
        sys.alphabet().parse_word(text).unwrap()
    }

    fn one_loop() -> LambdaGraphSystem {
        let g = LabeledGraph::from_triples(Alphabet::new(&["a"]).unwrap(), 1, &[(0, "a", 0)]).unwrap();
        build_from_finite_graph(&g, 4).unwrap()
    }

    fn two_loops() -> LambdaGraphSystem {
        let g = LabeledGraph::from_triples(
            Alphabet::new(&["a", "b"]).unwrap(),
            2,
            &[(0, "a", 0), (1, "b", 1)],
        )
        .unwrap();
        build_from_finite_graph(&g, 4).unwrap()
    }

    #[test]
    fn follower_equality_examples() {
        let g = golden();
        let x = w(&g, "0 1");
        assert!(follower_equal(&g, &x, &x).unwrap());
        assert!(follower_equal(&g, &w(&g, "0"), &w(&g, "0 0")).unwrap());
        assert!(!follower_equal(&g, &w(&g, "0"), &w(&g, "1")).unwrap());
        assert!(matches!(
            follower_equal(&g, &w(&g, "0"), &w(&g, "0 0 0 0 0 0 0")),
            Err(Error::Depth { .. })
        ));
    }

    #[test]
    fn succ_examples() {
        let g = golden();
        let d = succ_relation(&g, &w(&g, "1"), &w(&g, "1"), 3).unwrap();
        assert_eq!(d.verdict, Tri::Yes);
        assert_eq!(d.witness.as_deref(), Some("η = 0"));

        let full = build_lambda_synchronizing(&SubshiftSpec::full(2).unwrap(), 5, Bounds::default()).unwrap();
        let d = succ_relation(&full, &w(&full, "0 1"), &w(&full, "1"), 2).unwrap();
        assert_eq!(d.witness.as_deref(), Some("η = ∅"));

        let two = two_loops();
        let d = succ_relation(&two, &w(&two, "a"), &w(&two, "b"), 2).unwrap();
        assert_eq!(d.verdict, Tri::No);
    }

    #[test]
    fn condition_i_examples() {
        assert_eq!(check_condition_i(&build_cantor_horizon_dyck(2, 4).unwrap(), 3).verdict, Tri::Yes);
        assert_eq!(check_condition_i(&one_loop(), 2).verdict, Tri::No);
        assert_eq!(check_condition_i(&golden(), 3).verdict, Tri::Yes);
    }

    #[test]
    fn irreducibility_examples() {
        let d = build_cantor_horizon_dyck(2, 6).unwrap();
        assert_eq!(check_lambda_irreducible(&d, 4).verdict, Tri::Yes);
        assert_eq!(check_iota_irreducible(&d, 2).verdict, Tri::Yes);
        assert_eq!(check_lambda_irreducible(&two_loops(), 3).verdict, Tri::No);
        assert_eq!(check_iota_irreducible(&two_loops(), 3).verdict, Tri::No);
        assert_eq!(check_lambda_irreducible(&golden(), 3).verdict, Tri::Yes);
        assert_eq!(check_iota_irreducible(&golden(), 3).verdict, Tri::Yes);
    }

    #[test]
    fn launching_examples() {
        let d = build_cantor_horizon_dyck(2, 4).unwrap();
        let v = launching_vertex(&d, &w(&d, "b1 b2"), 2).unwrap().unwrap();
        assert_eq!(d.levels()[2].names[v], "b1 b2");

        let full = build_lambda_synchronizing(&SubshiftSpec::full(2).unwrap(), 3, Bounds::default()).unwrap();
        assert_eq!(launching_vertex(&full, &w(&full, "0 1 1"), 0).unwrap(), Some(0));

        let g = golden();
        let v = launching_vertex(&g, &w(&g, "1"), 1).unwrap().unwrap();
        let pasts = crate::lambda::predecessor_sets(&g);
        assert_eq!(pasts[1][v], BTreeSet::from([w(&g, "0")]));
        let v = launching_vertex(&g, &w(&g, "0"), 1).unwrap().unwrap();
        assert_eq!(pasts[1][v], BTreeSet::from([w(&g, "0"), w(&g, "1")]));
        assert!(launching_vertex(&g, &w(&g, "0 0 0 0 0 0"), 1).is_err());
    }

    #[test]
    fn lambda_synchronizing_examples() {
        let gm = build_lambda_synchronizing(&SubshiftSpec::golden_mean(), 4, Bounds::default()).unwrap();
        assert_eq!(is_lambda_synchronizing_system(&gm, 3).verdict, Tri::Yes);
        let d = build_cantor_horizon_dyck(2, 5).unwrap();
        assert_eq!(is_lambda_synchronizing_system(&d, 3).verdict, Tri::Yes);

        let a = Alphabet::new(&["a", "b"]).unwrap();
        let doubled = LabeledGraph::from_triples(
            a,
            2,
            &[(0, "a", 0), (1, "b", 0), (1, "a", 1), (0, "b", 1)],
        )
        .unwrap();
        let sys = build_from_finite_graph(&doubled, 4).unwrap();
        assert_eq!(is_lambda_synchronizing_system(&sys, 3).verdict, Tri::No);
    }

    #[test]
    fn transitivity_examples() {
        for (spec, len, bound) in [
            (SubshiftSpec::full(2).unwrap(), 2, 2),
            (SubshiftSpec::golden_mean(), 2, 2),
            (SubshiftSpec::golden_mean(), 3, 3),
            (SubshiftSpec::dyck(2).unwrap(), 2, 2),
        ] {
            let r = check_synchronizingly_transitive(&spec, len, bound, Bounds::default()).unwrap();
            assert_eq!(r.transitive.verdict, Tri::Yes, "{}: {}", spec.kind(), r.transitive);
            assert_eq!(r.simplicity_predicted, Tri::Yes, "{}: {}", spec.kind(), r.condition_i);
        }
    }
}
