//! The spec document format.
//!
//! ```json
//! {"kind": "sft", "alphabet": ["0", "1"], "forbidden": ["1 1"]}
//! {"kind": "sofic", "alphabet": ["0", "1"], "vertices": 2, "edges": [[0, "0", 0], [1, "1", 0], [0, "0", 1]]}
//! {"kind": "dyck", "n": 2}
//! {"kind": "markov_dyck", "matrix": [[1, 1], [1, 0]]}
//! {"kind": "full", "n": 2}
//! {"kind": "full", "alphabet": ["a", "b"]}
//! {"kind": "expanded", "base": {"kind": "dyck", "n": 2}, "target": "b1", "fresh": "e"}
//! ```
//!
//! Words are display names separated by spaces.

use serde::{Deserialize, Serialize};

use super::{LabeledGraph, SubshiftSpec};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SpecDoc {
    Sft {
        alphabet: Vec<String>,
        forbidden: Vec<String>,
    },
    Sofic {
        alphabet: Vec<String>,
        vertices: usize,
        edges: Vec<(usize, String, usize)>,
    },
    Dyck {
        n: usize,
    },
    MarkovDyck {
        matrix: Vec<Vec<i64>>,
    },
    Full {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<Vec<String>>,
    },
    Expanded {
        base: Box<SpecDoc>,
        target: String,
        fresh: String,
    },
}

impl SpecDoc {
    fn into_spec(self) -> Result<SubshiftSpec> {
        match self {
            SpecDoc::Sft { alphabet, forbidden } => {
                let a = Alphabet::new(&alphabet)?;
                let words: Vec<&str> = forbidden.iter().map(String::as_str).collect();
                SubshiftSpec::sft(a, &words)
            }
            SpecDoc::Sofic {
                alphabet,
                vertices,
                edges,
            } => {
                let a = Alphabet::new(&alphabet)?;
                let triples: Vec<(usize, &str, usize)> =
                    edges.iter().map(|(s, l, t)| (*s, l.as_str(), *t)).collect();
                SubshiftSpec::sofic(LabeledGraph::from_triples(a, vertices, &triples)?)
            }
            SpecDoc::Dyck { n } => SubshiftSpec::dyck(n),
            SpecDoc::MarkovDyck { matrix } => SubshiftSpec::markov_dyck(&matrix),
            SpecDoc::Full { n, alphabet } => match (n, alphabet) {
                (Some(n), None) => SubshiftSpec::full(n),
                (None, Some(names)) => SubshiftSpec::full_with(Alphabet::new(&names)?),
                (Some(n), Some(names)) if names.len() == n => SubshiftSpec::full_with(Alphabet::new(&names)?),
                _ => Err(Error::Invalid(
                    "a full shift needs \"n\" or an \"alphabet\" of that size".into(),
                )),
            },
            SpecDoc::Expanded { base, target, fresh } => {
                SubshiftSpec::expanded(base.into_spec()?, &target, &fresh)
            }
        }
    }

    fn from_spec(spec: &SubshiftSpec) -> SpecDoc {
        let names = |a: &Alphabet| a.names().to_vec();
        match spec {
            SubshiftSpec::Sft(s) => SpecDoc::Sft {
                alphabet: names(s.alphabet()),
                forbidden: s.forbidden().iter().map(|w| s.alphabet().display_word(w)).collect(),
            },
            SubshiftSpec::Sofic(s) => {
                let g = s.graph();
                SpecDoc::Sofic {
                    alphabet: names(g.alphabet()),
                    vertices: g.vertex_count(),
                    edges: g
                        .edges()
                        .iter()
                        .map(|e| (e.source, g.alphabet().name(e.label).to_string(), e.target))
                        .collect(),
                }
            }
            SubshiftSpec::Dyck(d) => SpecDoc::Dyck { n: d.n() },
            SubshiftSpec::MarkovDyck(d) => SpecDoc::MarkovDyck {
                matrix: d
                    .matrix()
                    .iter()
                    .map(|row| row.iter().map(|&b| i64::from(b)).collect())
                    .collect(),
            },
            SubshiftSpec::Full(a) => SpecDoc::Full {
                n: None,
                alphabet: Some(names(a)),
            },
            SubshiftSpec::Expanded(e) => SpecDoc::Expanded {
                base: Box::new(SpecDoc::from_spec(e.base())),
                target: e.base().alphabet().name(e.target()).to_string(),
                fresh: e.alphabet().name(e.fresh()).to_string(),
            },
        }
    }
}

impl SubshiftSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDoc = serde_json::from_str(text)?;
        doc.into_spec()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&SpecDoc::from_spec(self))?)
    }
}
