//! Compare the invariants of a spec with those of its symbol expansion.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::flow::expand_spec;
use crate::invariants::{groups_isomorphic, invariant_report, AbelianGroup, InvariantReport, LevelGroups};
use crate::lambda::build_auto;
use crate::language::Bounds;
use crate::subshift::SubshiftSpec;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowVerdict {
    /// Both reports stabilized with isomorphic groups.
    Pass,
    Fail,
    /// At least one side did not stabilize. `torsion_agrees` records whether
    /// the torsion parts match at every compared level.
    Inconclusive { torsion_agrees: bool },
}

impl FlowVerdict {
    /// 0 pass, 1 fail, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            FlowVerdict::Pass => 0,
            FlowVerdict::Fail => 1,
            FlowVerdict::Inconclusive { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupComparison {
    pub name: &'static str,
    pub original: AbelianGroup,
    pub expanded: AbelianGroup,
    pub isomorphic: bool,
}

#[derive(Clone, Debug)]
pub struct FlowcheckReport {
    pub expanded_spec: SubshiftSpec,
    pub original: InvariantReport,
    pub expanded: InvariantReport,
    /// Stabilized groups side by side; empty when a side did not stabilize.
    pub comparisons: Vec<GroupComparison>,
    pub verdict: FlowVerdict,
}

fn named(g: &LevelGroups) -> [(&'static str, &AbelianGroup); 4] {
    [("K0", &g.k0), ("K1", &g.k1), ("BF0", &g.bf0), ("BF1", &g.bf1)]
}

/// First of `e`, `e1`, `e2`, … that is not already a symbol.
pub fn default_fresh(spec: &SubshiftSpec) -> String {
    let a = spec.alphabet();
    std::iter::once("e".to_string())
        .chain((1..).map(|i| format!("e{i}")))
        .find(|name| a.symbol(name).is_err())
        .expect("some name is free")
}

/// Builds both systems to depth `levels + 1` and compares `levels` levels
/// of groups.
pub fn flowcheck(
    spec: &SubshiftSpec,
    target: &str,
    fresh: Option<&str>,
    levels: usize,
    bounds: Bounds,
) -> Result<FlowcheckReport> {
    let fresh = fresh.map(str::to_string).unwrap_or_else(|| default_fresh(spec));
    let expanded_spec = expand_spec(spec, target, &fresh)?;
    let original = invariant_report(&build_auto(spec, levels + 1, bounds)?, levels)?;
    let expanded = invariant_report(&build_auto(&expanded_spec, levels + 1, bounds)?, levels)?;
    let (comparisons, verdict) = match (original.stable_groups(), expanded.stable_groups()) {
        (Some(a), Some(b)) => {
            let cs: Vec<GroupComparison> = named(a)
                .into_iter()
                .zip(named(b))
                .map(|((name, x), (_, y))| GroupComparison {
                    name,
                    original: x.clone(),
                    expanded: y.clone(),
                    isomorphic: groups_isomorphic(x, y),
                })
                .collect();
            let verdict = if cs.iter().all(|c| c.isomorphic) { FlowVerdict::Pass } else { FlowVerdict::Fail };
            (cs, verdict)
        }
        _ => {
            let torsion_agrees = original.levels.iter().zip(&expanded.levels).all(|(a, b)| {
                named(a)
                    .into_iter()
                    .zip(named(b))
                    .all(|((_, x), (_, y))| x.torsion() == y.torsion())
            });
            (Vec::new(), FlowVerdict::Inconclusive { torsion_agrees })
        }
    };
    Ok(FlowcheckReport {
        expanded_spec,
        original,
        expanded,
        comparisons,
        verdict,
    })
}

impl FlowcheckReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.comparisons {
            let _ = writeln!(
                out,
                "{:<4} {} vs {}: {}",
                c.name,
                c.original,
                c.expanded,
                if c.isomorphic { "isomorphic" } else { "NOT isomorphic" }
            );
        }
        match self.verdict {
            FlowVerdict::Pass => out.push_str("PASS\n"),
            FlowVerdict::Fail => out.push_str("FAIL\n"),
            FlowVerdict::Inconclusive { torsion_agrees } => {
                out.push_str("original:\n");
                out.push_str(&self.original.to_text());
                out.push_str("expanded:\n");
                out.push_str(&self.expanded.to_text());
                out.push_str("inconclusive (non-stabilized)\n");
                if torsion_agrees {
                    let _ = writeln!(
                        out,
                        "PASS-at-depth: torsion agrees at levels 0..{}",
                        self.original.levels.len() - 1
                    );
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let verdict = match self.verdict {
            FlowVerdict::Pass => "pass",
            FlowVerdict::Fail => "fail",
            FlowVerdict::Inconclusive { .. } => "inconclusive",
        };
        let torsion_agrees = match self.verdict {
            FlowVerdict::Inconclusive { torsion_agrees } => Some(torsion_agrees),
            _ => None,
        };
        json!({
            "verdict": verdict,
            "torsion_agrees_at_depth": torsion_agrees,
            "comparisons": self.comparisons.iter().map(|c| json!({
                "group": c.name,
                "original": c.original.to_json(),
                "expanded": c.expanded.to_json(),
                "isomorphic": c.isomorphic,
            })).collect::<Vec<_>>(),
            "original": self.original.to_json(),
            "expanded": self.expanded.to_json(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_passes() {
        let r = flowcheck(&SubshiftSpec::golden_mean(), "1", None, 4, Bounds::default()).unwrap();
        assert_eq!(r.verdict, FlowVerdict::Pass, "{}", r.to_text());
        assert!(r.comparisons.iter().all(|c| c.original.is_trivial()));
    }

    #[test]
    fn fresh_name_avoids_collisions() {
        let a = crate::Alphabet::new(&["e", "e1", "x"]).unwrap();
        assert_eq!(default_fresh(&SubshiftSpec::full_with(a).unwrap()), "e2");
    }
}
