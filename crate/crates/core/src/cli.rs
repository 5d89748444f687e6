//! Command-line front end.
//!
//! Exit codes: 0 when the check succeeds or the claim holds, 1 when it
//! fails or a countermodel is found, 2 on usage, input or budget errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::formula::{parse, Formula, Fragment};
use crate::model::{parse_class, Document, Model, Property, PropertySet};
use crate::proofs::{axiom_soundness_over, check_derivation, parse_script, AxiomSystem, CheckOutcome};
use crate::replication::{export_fixture, run_paper_suite, SuiteOptions};
use crate::search::{check_bullet_morphism, default_vocab, distinguishable, parse_map, SearchOptions, DEFAULT_SEED};
use crate::semantics::{class_valid, model_valid, satisfies, truth_set};

#[derive(Debug, Parser)]
#[command(name = "nbhd", version, about = "Neighborhood models for Fitchean and first-order ignorance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormulaArg {
    /// Formula text, e.g. "bullet p -> nabla p".
    #[arg(long, conflicts_with = "formula_file")]
    formula: Option<String>,
    /// File holding the formula.
    #[arg(long)]
    formula_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula at a state (or at every state) of a model.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: Option<String>,
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the neighborhood property profile of a model or frame.
    Props {
        #[arg(long)]
        model: PathBuf,
        /// Exit 1 unless the frame has all of these properties.
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Bounded validity over a frame class.
    Valid {
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long, default_value_t = 2)]
        max_states: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Frames drawn per sampled size.
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a fragment separates two pointed models.
    Distinguish {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        model2: PathBuf,
        #[arg(long)]
        state2: String,
        #[arg(long, default_value = "nabla-bullet")]
        fragment: Fragment,
        /// Comma-separated atoms; defaults to those true somewhere.
        #[arg(long)]
        vocab: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check that a state map is a bullet-morphism.
    Morphism {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        model2: PathBuf,
        /// e.g. "s=s',t=t'"
        #[arg(long)]
        map: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a derivation, or with --soundness the axioms of a system.
    Prove {
        #[arg(long, required_unless_present = "soundness")]
        script: Option<PathBuf>,
        #[arg(long, default_value = "E")]
        system: String,
        /// Check each axiom of the system over its frame class instead.
        #[arg(long)]
        soundness: bool,
        /// Frame class for --soundness (default: the system's own).
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_states: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the supplementation of a model or frame.
    Supplement {
        #[arg(long)]
        model: PathBuf,
    },
    /// Run the replication suite.
    Replicate {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Sample the three-state definability scan.
        #[arg(long)]
        quick: bool,
        /// Leave per-claim timings out of the report.
        #[arg(long)]
        no_timings: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print a shipped fixture in the model file format.
    ExportFixture {
        /// Fixture id, e.g. P1.M or P1.M'
        id: String,
    },
}

/// A failure that maps to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn read(path: &Path) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Usage> {
    Document::parse(&read(path)?).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn formula(arg: &FormulaArg) -> Result<Formula, Usage> {
    let text = match (&arg.formula, &arg.formula_file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => return Err(Usage("one of --formula or --formula-file is required".into())),
    };
    Ok(parse(text.trim())?)
}

fn class(text: &str) -> Result<PropertySet, Usage> {
    parse_class(text).map_err(Usage)
}

fn emit_json(out: &mut dyn Write, v: &impl Serialize) -> Result<(), Usage> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn check(out: &mut dyn Write, model: &Model, state: Option<&str>, f: &Formula, json: bool) -> Outcome {
    let truth = truth_set(model, f).show(model.frame().labels());
    let value = match state {
        Some(s) => satisfies(model, s, f)?,
        None => model_valid(model, f),
    };
    if json {
        emit_json(out, &json!({ "formula": f, "state": state, "value": value, "truth_set": truth }))?;
    } else if state.is_some() {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{value}\ntruth set: {truth}")?;
    }
    Ok(value)
}

fn props(out: &mut dyn Write, doc: &Document, wanted: Option<&str>, json: bool) -> Outcome {
    let fr = doc.frame();
    let profile: Vec<(Property, bool)> = Property::ALL.iter().map(|&p| (p, fr.has_property(p))).collect();
    let ok = match wanted {
        None => true,
        Some(c) => class(c)?.iter().all(|p| fr.has_property(*p)),
    };
    if json {
        let map: serde_json::Map<String, serde_json::Value> =
            profile.iter().map(|(p, b)| (p.name().to_string(), json!(b))).collect();
        emit_json(out, &map)?;
    } else {
        for (p, b) in &profile {
            writeln!(out, "({}) {}", p.name(), if *b { "yes" } else { "no" })?;
        }
    }
    Ok(ok)
}

fn valid(out: &mut dyn Write, f: &Formula, class_text: &str, opts: &SearchOptions, json: bool) -> Outcome {
    let v = class_valid(f, &class(class_text)?, opts)?;
    if json {
        emit_json(out, &v)?;
    } else {
        write!(out, "{}", v.render())?;
    }
    Ok(v.is_valid_up_to_bound())
}

#[allow(clippy::too_many_arguments)]
fn distinguish(
    out: &mut dyn Write,
    m: &Model,
    s: &str,
    m2: &Model,
    s2: &str,
    frag: Fragment,
    vocab: Option<&str>,
    json: bool,
) -> Outcome {
    let vocab: BTreeSet<String> = match vocab {
        Some(v) => v.split(',').map(|a| a.trim().to_string()).filter(|a| !a.is_empty()).collect(),
        None => default_vocab(m, m2),
    };
    let w = distinguishable(m, s, m2, s2, frag, &vocab)?;
    if json {
        emit_json(out, &json!({ "fragment": frag, "vocab": vocab, "distinguishable": w.is_some(), "witness": w }))?;
    } else {
        match &w {
            None => writeln!(out, "indistinguishable in {} over {{{}}}", frag.name(), join(&vocab))?,
            Some(w) => {
                writeln!(out, "distinguishable by {} ({} at {s}, {} at {s2})", w.formula, w.left, w.right)?;
                for line in &w.trace {
                    writeln!(out, "  {line}")?;
                }
            }
        }
    }
    Ok(w.is_none())
}

fn join(v: &BTreeSet<String>) -> String {
    v.iter().cloned().collect::<Vec<_>>().join(",")
}

fn morphism(out: &mut dyn Write, m: &Model, m2: &Model, map: &str, json: bool) -> Outcome {
    let idx = parse_map(m, m2, map)?;
    let res = check_bullet_morphism(m, m2, &idx);
    if json {
        let reason = res.as_ref().err().map(|e| e.to_string());
        emit_json(out, &json!({ "map": map, "morphism": res.is_ok(), "failure": reason }))?;
    } else {
        match &res {
            Ok(()) => writeln!(out, "bullet-morphism")?,
            Err(e) => writeln!(out, "not a bullet-morphism: {e}")?,
        }
    }
    Ok(res.is_ok())
}

fn prove(out: &mut dyn Write, script: &Path, system: &AxiomSystem, json: bool) -> Outcome {
    let d = parse_script(&read(script)?)?;
    let outcome = check_derivation(system, &d)?;
    if json {
        emit_json(out, &outcome)?;
    } else {
        match &outcome {
            CheckOutcome::Accepted { lines } => {
                let thm = d.theorem().map(|t| t.to_string()).unwrap_or_default();
                writeln!(out, "accepted in {}: {lines} lines\ntheorem: {thm}", system.name())?;
            }
            CheckOutcome::Rejected { line, reason } => writeln!(out, "rejected at line {line}: {reason}")?,
        }
    }
    Ok(outcome.is_accepted())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Check { model, state, formula: fa, json } => {
            let m = load(&model)?.model();
            check(out, &m, state.as_deref(), &formula(&fa)?, json)
        }
        Command::Props { model, class, json } => props(out, &load(&model)?, class.as_deref(), json),
        Command::Valid { formula: fa, class, max_states, seed, samples, jobs, json } => {
            let opts = SearchOptions { max_states, seed, samples, jobs, ..SearchOptions::default() };
            valid(out, &formula(&fa)?, &class, &opts, json)
        }
        Command::Distinguish { model, state, model2, state2, fragment, vocab, json } => {
            let (m, m2) = (load(&model)?.model(), load(&model2)?.model());
            distinguish(out, &m, &state, &m2, &state2, fragment, vocab.as_deref(), json)
        }
        Command::Morphism { model, model2, map, json } => {
            morphism(out, &load(&model)?.model(), &load(&model2)?.model(), &map, json)
        }
        Command::Prove { script, system, soundness, class: cls, max_states, jobs, json } => {
            let system = AxiomSystem::by_name(&system)?;
            if soundness {
                let props = match cls {
                    Some(c) => class(&c)?,
                    None => system.class(),
                };
                let opts = SearchOptions { max_states, jobs, ..SearchOptions::default() };
                let r = axiom_soundness_over(&system, &props, &opts)?;
                if json {
                    emit_json(out, &r)?;
                } else {
                    write!(out, "{}", r.render())?;
                }
                return Ok(r.all_valid());
            }
            let script = script.ok_or_else(|| Usage("--script is required".into()))?;
            prove(out, &script, &system, json)
        }
        Command::Supplement { model } => {
            let doc = load(&model)?;
            let sup = doc.frame().supplementation();
            let doc = if doc.is_frame() {
                Document::Frame(sup)
            } else {
                Document::Model(sup.with_valuation(doc.model().valuation().clone())?)
            };
            write!(out, "{}", doc.to_json())?;
            Ok(true)
        }
        Command::Replicate { jobs, quick, no_timings, json } => {
            let report = run_paper_suite(&SuiteOptions { quick, jobs, timings: !no_timings })?;
            if json {
                write!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", report.render())?;
            }
            Ok(report.all_passed())
        }
        Command::ExportFixture { id } => {
            write!(out, "{}", export_fixture(&id)?)?;
            Ok(true)
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
