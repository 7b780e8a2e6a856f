//! The `lgk` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 unusable input, 3 inconclusive.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::flowcheck::{default_fresh, flowcheck};
use crate::invariants::invariant_report;
use crate::lambda::{
    build_auto, build_cantor_horizon_markov_dyck, build_lambda_synchronizing, check_condition_i,
    check_iota_irreducible, check_lambda_irreducible, check_synchronizingly_transitive,
    is_lambda_synchronizing_system, transition_matrices, verify_essential, verify_iota_surjective,
    verify_label_iota, verify_left_resolving, verify_local_property, verify_matrix_identity,
    verify_predecessor_separated, LambdaGraphSystem, Violation,
};
use crate::language::Bounds;
use crate::subshift::SubshiftSpec;
use crate::Tri;

#[derive(Parser, Debug)]
#[command(name = "lgk", version, about = "λ-graph systems of subshifts and their invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a λ-graph system and print it as JSON.
    Build {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Builder::Auto)]
        builder: Builder,
    },
    /// Run the structural checks and the tri-state analyses.
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        /// Search bound for irreducibility and `≻` witnesses.
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Word length explored by condition (I) and launching searches;
        /// defaults to `bound + 1`.
        #[arg(long)]
        search_depth: Option<usize>,
        /// Longest word length in the transitivity check.
        #[arg(long, default_value_t = 2)]
        word_len: usize,
    },
    /// Level K-groups and Bowen–Franks groups for levels 0..depth.
    Invariants {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Print the spec obtained by expanding one symbol.
    Expand {
        #[command(flatten)]
        common: Common,
        #[arg(long = "expand", value_name = "SYMBOL")]
        target: String,
        #[arg(long)]
        fresh: Option<String>,
    },
    /// Compare the invariants of a spec and of its expansion.
    Flowcheck {
        #[command(flatten)]
        common: Common,
        #[arg(long = "expand", value_name = "SYMBOL")]
        target: String,
        #[arg(long)]
        fresh: Option<String>,
    },
    /// Render a system as Graphviz DOT.
    ExportDot {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Subshift spec (JSON).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Truncation depth L.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
    /// Word enumeration budget; overrides LGK_BUDGET.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct Input {
    /// A system JSON file instead of a spec.
    #[arg(long, conflicts_with = "spec")]
    system: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Builder {
    /// Cantor horizon for bracket shifts, canonical otherwise.
    Auto,
    Canonical,
    Horizon,
}

impl Common {
    fn bounds(&self) -> Bounds {
        let b = Bounds::from_env();
        match self.budget {
            Some(n) => b.with_max_words(n as usize),
            None => b,
        }
    }

    fn depth(&self) -> usize {
        self.depth as usize
    }

    fn load_spec(&self) -> Result<SubshiftSpec> {
        let path = self
            .spec
            .as_ref()
            .ok_or_else(|| Error::Invalid("--spec FILE is required".into()))?;
        SubshiftSpec::from_json(&read(path)?)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit(common: &Common, text: &str, out: &mut dyn Write) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn system_for(input: &Input, common: &Common, depth: usize) -> Result<LambdaGraphSystem> {
    match &input.system {
        Some(path) => LambdaGraphSystem::from_json(&read(path)?),
        None => build_auto(&common.load_spec()?, depth, common.bounds()),
    }
}

fn size_table(sys: &LambdaGraphSystem) -> String {
    let mut s = String::from("level  m(l)\n");
    for (l, m) in sys.level_sizes().iter().enumerate() {
        s.push_str(&format!("{l:<6} {m}\n"));
    }
    s.push_str(&format!("m = {:?}\n", sys.level_sizes()));
    s
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Build { common, builder } => {
            let spec = common.load_spec()?;
            let sys = match builder {
                Builder::Auto => build_auto(&spec, common.depth(), common.bounds())?,
                Builder::Canonical => build_lambda_synchronizing(&spec, common.depth(), common.bounds())?,
                Builder::Horizon => {
                    let d = spec
                        .dyck_spec()
                        .filter(|_| matches!(spec, SubshiftSpec::Dyck(_) | SubshiftSpec::MarkovDyck(_)))
                        .ok_or_else(|| Error::Invalid("the horizon builder needs a dyck or markov_dyck spec".into()))?;
                    let matrix: Vec<Vec<i64>> =
                        d.matrix().iter().map(|r| r.iter().map(|&b| i64::from(b)).collect()).collect();
                    build_cantor_horizon_markov_dyck(&matrix, common.depth())?
                }
            };
            match common.format(Format::Json) {
                Format::Text => emit(&common, &size_table(&sys), out)?,
                Format::Json => {
                    emit(&common, &(sys.to_json()? + "\n"), out)?;
                    err.write_all(size_table(&sys).as_bytes())?;
                }
                Format::Dot => emit(&common, &sys.to_dot()?, out)?,
            }
            Ok(0)
        }
        Command::Verify {
            input,
            common,
            bound,
            search_depth,
            word_len,
        } => verify(&input, &common, bound, search_depth.unwrap_or(bound + 1), word_len, out),
        Command::Invariants { input, common } => {
            let levels = common.depth();
            let sys = system_for(&input, &common, levels + 1)?;
            let levels = levels.min(sys.depth());
            let report = invariant_report(&sys, levels)?;
            let text = match common.format(Format::Text) {
                Format::Json => serde_json::to_string_pretty(&report.to_json())? + "\n",
                _ => report.to_text(),
            };
            emit(&common, &text, out)?;
            Ok(0)
        }
        Command::Expand { common, target, fresh } => {
            let spec = common.load_spec()?;
            let fresh = fresh.unwrap_or_else(|| default_fresh(&spec));
            let expanded = crate::flow::expand_spec(&spec, &target, &fresh)?;
            emit(&common, &(expanded.to_json()? + "\n"), out)?;
            Ok(0)
        }
        Command::Flowcheck { common, target, fresh } => {
            let spec = common.load_spec()?;
            let report = flowcheck(&spec, &target, fresh.as_deref(), common.depth(), common.bounds())?;
            let text = match common.format(Format::Text) {
                Format::Json => serde_json::to_string_pretty(&report.to_json())? + "\n",
                _ => report.to_text(),
            };
            emit(&common, &text, out)?;
            Ok(report.verdict.exit_code())
        }
        Command::ExportDot { input, common } => {
            let sys = system_for(&input, &common, common.depth())?;
            emit(&common, &sys.to_dot()?, out)?;
            Ok(0)
        }
    }
}

fn hard(name: &str, r: std::result::Result<(), Violation>) -> (String, bool, Option<String>) {
    match r {
        Ok(()) => (name.to_string(), true, None),
        Err(v) => (name.to_string(), false, Some(v.to_string())),
    }
}

fn verify(
    input: &Input,
    common: &Common,
    bound: usize,
    search_depth: usize,
    word_len: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let spec = match &input.system {
        Some(_) => None,
        None => Some(common.load_spec()?),
    };
    let sys = system_for(input, common, common.depth())?;
    let tm = transition_matrices(&sys);
    let structural = vec![
        hard("essential", verify_essential(&sys)),
        hard("left-resolving", verify_left_resolving(&sys)),
        hard("ι-surjective", verify_iota_surjective(&sys)),
        hard("label-ι compatible", verify_label_iota(&sys)),
        hard("local property", verify_local_property(&sys)),
        hard("matrix identity", verify_matrix_identity(&tm)),
        hard("predecessor-separated", verify_predecessor_separated(&sys)),
    ];
    let ok = structural.iter().all(|(_, pass, _)| *pass);
    let search_depth = search_depth.clamp(1, sys.depth());
    let mut tri = Vec::new();
    if ok {
        tri.push(("condition (I)", check_condition_i(&sys, search_depth)));
        tri.push(("λ-irreducible", check_lambda_irreducible(&sys, bound)));
        tri.push(("ι-irreducible", check_iota_irreducible(&sys, bound)));
        tri.push(("λ-synchronizing", is_lambda_synchronizing_system(&sys, search_depth)));
    }
    let transitivity = match (&spec, ok) {
        (Some(spec), true) => Some(check_synchronizingly_transitive(spec, word_len, bound, common.bounds())?),
        _ => None,
    };
    let simplicity = transitivity.as_ref().map_or(Tri::Unknown, |t| t.simplicity_predicted);

    if common.format(Format::Text) == Format::Json {
        let doc = json!({
            "levels": sys.level_sizes(),
            "structural": structural.iter().map(|(n, p, w)| json!({"check": n, "pass": p, "witness": w})).collect::<Vec<_>>(),
            "analyses": tri.iter().map(|(n, d)| json!({"check": n, "verdict": d.verdict.to_string(), "witness": d.witness})).collect::<Vec<_>>(),
            "synchronizingly_transitive": transitivity.as_ref().map(|t| json!({
                "verdict": t.transitive.verdict.to_string(),
                "witness": t.transitive.witness,
                "pairs": t.pairs,
                "depth": t.depth,
            })),
            "simplicity_predicted": simplicity.to_string(),
        });
        emit(common, &(serde_json::to_string_pretty(&doc)? + "\n"), out)?;
    } else {
        let mut text = format!("levels m = {:?}\n", sys.level_sizes());
        for (name, pass, witness) in &structural {
            text.push_str(&format!("{name:<24} {}", if *pass { "Yes" } else { "No" }));
            if let Some(w) = witness {
                text.push_str(&format!("  ({w})"));
            }
            text.push('\n');
        }
        for (name, d) in &tri {
            text.push_str(&format!("{name:<24} {d}\n"));
        }
        if let Some(t) = &transitivity {
            text.push_str(&format!(
                "{:<24} {} [{} pairs at depth {}]\n",
                "sync. transitive", t.transitive, t.pairs, t.depth
            ));
        }
        text.push_str(&format!("simplicity predicted: {}\n", simplicity.to_string().to_lowercase()));
        emit(common, &text, out)?;
    }
    Ok(if ok { 0 } else { 1 })
}
