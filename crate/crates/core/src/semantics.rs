//! Truth sets, satisfaction, and model, frame and bounded class validity.
//!
//! Evaluation is bottom-up over [`StateSet`]s:
//!
//! * `∇φ` holds at s iff φ^M ∉ N(s) and S∖φ^M ∉ N(s)
//! * `•φ` holds at s iff s ∈ φ^M and φ^M ∉ N(s)
//! * `□φ` holds at s iff φ^M ∈ N(s)
//!
//! Metavariables have no valuation of their own and denote ∅ here; the
//! validity checks replace them with fresh atoms first.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::formula::Formula;
use crate::model::{class_name, Frame, Model, ModelError, ModelFile, PropertySet, StateSet};
use crate::search::{self, SearchError, SearchOptions};

/// Largest `letters · |S|` for which [`frame_valid`] enumerates valuations.
pub const VALUATION_BUDGET: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("{letters} letters over {states} states need 2^{} valuations, above the budget of 2^{VALUATION_BUDGET}", letters * states)]
    Budget { letters: usize, states: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// φ^M
pub fn truth_set(m: &Model, f: &Formula) -> StateSet {
    eval(m, f)
}

fn eval(m: &Model, f: &Formula) -> StateSet {
    let fr = m.frame();
    let n = fr.size();
    let full = fr.full();
    let states = |pred: &dyn Fn(usize) -> bool| StateSet::from_indices((0..n).filter(|&u| pred(u)));
    match f {
        Formula::Atom(a) => m.value(a),
        Formula::Meta(_) => StateSet::EMPTY,
        Formula::Top => full,
        Formula::Bot => StateSet::EMPTY,
        Formula::Not(a) => eval(m, a).complement(n),
        Formula::And(a, b) => eval(m, a).intersection(eval(m, b)),
        Formula::Or(a, b) => eval(m, a).union(eval(m, b)),
        Formula::Imp(a, b) => eval(m, a).complement(n).union(eval(m, b)),
        Formula::Iff(a, b) => {
            let (x, y) = (eval(m, a), eval(m, b));
            StateSet(!(x.0 ^ y.0) & full.0)
        }
        Formula::Nabla(a) => {
            let x = eval(m, a);
            let c = x.complement(n);
            states(&|u| !fr.in_nbhd(u, x) && !fr.in_nbhd(u, c))
        }
        Formula::Bullet(a) => {
            let x = eval(m, a);
            states(&|u| x.contains(u) && !fr.in_nbhd(u, x))
        }
        Formula::Box(a) => fr.box_image(eval(m, a)),
        Formula::Delta(a) => {
            let x = eval(m, a);
            let c = x.complement(n);
            states(&|u| fr.in_nbhd(u, x) || fr.in_nbhd(u, c))
        }
        Formula::Circ(a) => {
            let x = eval(m, a);
            states(&|u| !x.contains(u) || fr.in_nbhd(u, x))
        }
        Formula::Diamond(a) => {
            let c = eval(m, a).complement(n);
            states(&|u| !fr.in_nbhd(u, c))
        }
    }
}

/// M, s ⊨ φ for the state labelled `state`.
pub fn satisfies(m: &Model, state: &str, f: &Formula) -> Result<bool, ModelError> {
    let s = m.index_of(state)?;
    Ok(truth_set(m, f).contains(s))
}

/// φ^M = S
pub fn model_valid(m: &Model, f: &Formula) -> bool {
    truth_set(m, f) == m.frame().full()
}

/// Replaces each metavariable `?x` by a fresh atom (`x`, or `x_1`, `x_2`, ...
/// if `x` already occurs).
pub fn ground(f: &Formula) -> Formula {
    let metas = f.metavars();
    if metas.is_empty() {
        return f.clone();
    }
    let mut taken = f.atoms();
    let mut map = BTreeMap::new();
    for m in metas {
        let mut name = m.clone();
        let mut k = 0;
        while taken.contains(&name) {
            k += 1;
            name = format!("{m}_{k}");
        }
        taken.insert(name.clone());
        map.insert(m, Formula::Atom(name));
    }
    f.substitute_meta(&|m| map.get(m).cloned())
}

/// Valid on the frame: true under every valuation of the formula's letters.
pub fn frame_valid(fr: &Frame, f: &Formula) -> Result<bool, SemanticsError> {
    Ok(frame_countermodel(fr, f)?.is_none())
}

/// The first valuation (in canonical order) and state falsifying `f` on `fr`.
///
/// Valuations are numbered with the letters in sorted order; letter `j`
/// occupies bits `j·n .. (j+1)·n` of the index.
pub fn frame_countermodel(fr: &Frame, f: &Formula) -> Result<Option<(Model, usize)>, SemanticsError> {
    let g = ground(f);
    let prog = Program::compile(&g);
    let k = prog.letters().len();
    let n = fr.size();
    if k * n > VALUATION_BUDGET {
        return Err(SemanticsError::Budget { letters: k, states: n });
    }
    Ok(prog.first_counterexample(fr).map(|(v, s)| (prog.model(fr, v), s)))
}

/// A formula compiled to postfix form over numbered letters; the hot loop of
/// the countermodel search.
#[derive(Debug, Clone)]
pub struct Program {
    ops: Vec<Op>,
    letters: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Letter(usize),
    Top,
    Bot,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Nabla,
    Bullet,
    Box,
}

impl Program {
    /// Compiles a formula whose letters are atoms (metavariables count as ∅).
    pub fn compile(f: &Formula) -> Program {
        let e = f.expand_defined();
        let letters: Vec<String> = e.atoms().into_iter().collect();
        let mut ops = Vec::new();
        Self::emit(&e, &letters, &mut ops);
        Program { ops, letters }
    }

    fn emit(f: &Formula, letters: &[String], ops: &mut Vec<Op>) {
        let un = |a: &Formula, op: Op, ops: &mut Vec<Op>| {
            Self::emit(a, letters, ops);
            ops.push(op);
        };
        match f {
            Formula::Atom(a) => ops.push(Op::Letter(letters.iter().position(|l| l == a).unwrap())),
            Formula::Meta(_) | Formula::Bot => ops.push(Op::Bot),
            Formula::Top => ops.push(Op::Top),
            Formula::Not(a) => un(a, Op::Not, ops),
            Formula::Nabla(a) => un(a, Op::Nabla, ops),
            Formula::Bullet(a) => un(a, Op::Bullet, ops),
            Formula::Box(a) => un(a, Op::Box, ops),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                Self::emit(a, letters, ops);
                Self::emit(b, letters, ops);
                ops.push(match f {
                    Formula::And(..) => Op::And,
                    Formula::Or(..) => Op::Or,
                    Formula::Imp(..) => Op::Imp,
                    _ => Op::Iff,
                });
            }
            Formula::Delta(_) | Formula::Circ(_) | Formula::Diamond(_) => {
                unreachable!("expanded above")
            }
        }
    }

    /// Sorted atom names; index `j` is letter `j` of a valuation.
    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    /// Truth set on `fr` where letter `j` denotes `vals[j]`.
    pub fn eval(&self, fr: &Frame, vals: &[StateSet]) -> StateSet {
        let n = fr.size();
        let full = fr.full().0;
        let mut stack: smallvec::SmallVec<[u32; 16]> = smallvec::SmallVec::new();
        let image = |pred: &dyn Fn(usize) -> bool| {
            let mut out = 0u32;
            for u in 0..n {
                if pred(u) {
                    out |= 1 << u;
                }
            }
            out
        };
        for op in &self.ops {
            match *op {
                Op::Letter(j) => stack.push(vals[j].0),
                Op::Top => stack.push(full),
                Op::Bot => stack.push(0),
                Op::Not => {
                    let x = stack.pop().unwrap();
                    stack.push(!x & full);
                }
                Op::And | Op::Or | Op::Imp | Op::Iff => {
                    let y = stack.pop().unwrap();
                    let x = stack.pop().unwrap();
                    stack.push(match *op {
                        Op::And => x & y,
                        Op::Or => x | y,
                        Op::Imp => (!x | y) & full,
                        _ => !(x ^ y) & full,
                    });
                }
                Op::Nabla => {
                    let x = StateSet(stack.pop().unwrap());
                    let c = x.complement(n);
                    stack.push(image(&|u| !fr.in_nbhd(u, x) && !fr.in_nbhd(u, c)));
                }
                Op::Bullet => {
                    let x = StateSet(stack.pop().unwrap());
                    stack.push(image(&|u| x.contains(u) && !fr.in_nbhd(u, x)));
                }
                Op::Box => {
                    let x = StateSet(stack.pop().unwrap());
                    stack.push(image(&|u| fr.in_nbhd(u, x)));
                }
            }
        }
        StateSet(stack.pop().unwrap())
    }

    /// Decodes valuation index `v` on an `n`-state frame.
    pub fn valuation(&self, n: usize, v: u64) -> Vec<StateSet> {
        let mask = (1u64 << n) - 1;
        (0..self.letters.len()).map(|j| StateSet((v >> (j * n) & mask) as u32)).collect()
    }

    /// The model on `fr` given by valuation index `v`.
    pub fn model(&self, fr: &Frame, v: u64) -> Model {
        let vals = self.valuation(fr.size(), v);
        let valuation = self.letters.iter().cloned().zip(vals).collect();
        Model::from_parts(fr.clone(), valuation)
    }

    /// Least (valuation index, state index) at which the formula fails on `fr`.
    pub fn first_counterexample(&self, fr: &Frame) -> Option<(u64, usize)> {
        let n = fr.size();
        let full = fr.full();
        let total = 1u64 << (self.letters.len() * n);
        (0..total).find_map(|v| {
            let t = self.eval(fr, &self.valuation(n, v));
            (t != full).then(|| (v, t.complement(n).iter().next().unwrap()))
        })
    }
}

/// Outcome of a bounded class-validity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    ValidUpToBound,
    Countermodel,
}

/// A pointed countermodel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    pub model: Model,
    pub state: String,
}

impl Serialize for PointedModel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            state: &'a str,
            model: ModelFile,
        }
        Repr { state: &self.state, model: ModelFile::from_model(&self.model) }.serialize(s)
    }
}

/// How the frames of one size were covered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub states: usize,
    pub mode: CoverageMode,
    /// Frames of this size that belong to the class and were checked.
    pub frames_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Result of [`class_valid`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub formula: Formula,
    #[serde(serialize_with = "ser_class")]
    pub class: PropertySet,
    pub status: Status,
    pub witness: Option<PointedModel>,
    /// Largest state count searched.
    pub bound: usize,
    pub coverage: Vec<Coverage>,
}

fn ser_class<S: Serializer>(c: &PropertySet, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&class_name(c))
}

impl Verdict {
    pub fn is_valid_up_to_bound(&self) -> bool {
        self.status == Status::ValidUpToBound
    }

    pub fn is_sampled(&self) -> bool {
        self.coverage.iter().any(|c| matches!(c.mode, CoverageMode::Sampled { .. }))
    }

    /// Re-evaluates the witness; true iff it really falsifies the formula.
    pub fn witness_rechecks(&self) -> bool {
        match &self.witness {
            None => false,
            Some(w) => {
                let g = ground(&self.formula);
                !satisfies(&w.model, &w.state, &g).unwrap_or(true)
                    && self.class.iter().all(|p| w.model.frame().has_property(*p))
            }
        }
    }

    /// Human-readable summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.status {
            Status::ValidUpToBound => out.push_str(&format!(
                "valid up to bound: no countermodel with at most {} states in class {}\n",
                self.bound,
                class_name(&self.class)
            )),
            Status::Countermodel => {
                let w = self.witness.as_ref().expect("countermodel verdicts carry a witness");
                out.push_str(&format!("countermodel in class {} at state {}:\n", class_name(&self.class), w.state));
                out.push_str(&w.model.describe());
            }
        }
        for c in &self.coverage {
            match &c.mode {
                CoverageMode::Exhaustive => {
                    out.push_str(&format!("  |S|={}: exhaustive, {} frames in class\n", c.states, c.frames_checked))
                }
                CoverageMode::Sampled { samples, seed } => out.push_str(&format!(
                    "  |S|={}: sampled {} frames (seed {}), {} in class\n",
                    c.states, samples, seed, c.frames_checked
                )),
            }
        }
        out
    }
}

/// Bounded validity over the class of frames with all of `props`.
///
/// Frames are searched by increasing size in canonical order, so a returned
/// countermodel is the least one regardless of `opts.jobs`.
pub fn class_valid(f: &Formula, props: &PropertySet, opts: &SearchOptions) -> Result<Verdict, SearchError> {
    let outcome = search::search_countermodel(f, props, opts)?;
    Ok(Verdict {
        formula: f.clone(),
        class: props.clone(),
        status: if outcome.witness.is_some() { Status::Countermodel } else { Status::ValidUpToBound },
        witness: outcome.witness.map(|(model, state)| PointedModel { model, state }),
        bound: opts.max_states,
        coverage: outcome.coverage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::model::Property;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    /// S={s,t}, N(s)={{t},{s,t}}, N(t)=∅, V(p)={s}
    fn sample() -> Model {
        let fr = Frame::new(labels(&["s", "t"]), vec![vec![StateSet(2), StateSet(3)], vec![]]).unwrap();
        fr.with_valuation(BTreeMap::from([("p".into(), StateSet(1))])).unwrap()
    }

    #[test]
    fn bullet_truth_set() {
        assert_eq!(truth_set(&sample(), &p("bullet p")), StateSet(1));
        assert_eq!(truth_set(&sample(), &p("bullet false")), StateSet::EMPTY);
    }

    #[test]
    fn nabla_truth_set() {
        let s = labels(&["s", "t"]);
        let fr = Frame::new(s, vec![vec![StateSet(3)], vec![StateSet(3)]]).unwrap();
        let m = fr.with_valuation(BTreeMap::from([("p".into(), StateSet(2))])).unwrap();
        assert_eq!(truth_set(&m, &p("nabla p")), StateSet(3));
    }

    #[test]
    fn model_validity_examples() {
        let m = sample();
        assert!(model_valid(&m, &p("delta p | nabla p")));
        assert!(model_valid(&m, &p("bullet p -> p")));
        assert!(!model_valid(&m, &p("circ p")));
        assert_eq!(truth_set(&m, &p("circ p")), StateSet(2));
    }

    #[test]
    fn unknown_state() {
        assert!(satisfies(&sample(), "x", &p("p")).is_err());
        assert!(satisfies(&sample(), "s", &p("p")).unwrap());
    }

    #[test]
    fn sugar_nodes_match_their_definitions() {
        let m = sample();
        for body in ["p", "~p", "bullet p", "true"] {
            let a = p(body);
            for f in [Formula::delta(a.clone()), Formula::circ(a.clone()), Formula::diamond(a.clone())] {
                assert_eq!(truth_set(&m, &f), truth_set(&m, &f.expand_defined()), "{f:?}");
            }
        }
    }

    #[test]
    fn frame_validity_examples() {
        let one = |nb: Vec<StateSet>| Frame::new(labels(&["s"]), vec![nb]).unwrap();
        assert!(frame_valid(&one(vec![StateSet(1)]), &p("circ true")).unwrap());
        assert!(!frame_valid(&one(vec![]), &p("circ true")).unwrap());
        assert!(frame_valid(&one(vec![]), &p("true")).unwrap());
    }

    #[test]
    fn frame_validity_budget() {
        let big = Frame::new((0..5).map(|i| format!("s{i}")).collect(), vec![vec![]; 5]).unwrap();
        let f = p("a & b & c & d & e -> a");
        assert_eq!(frame_valid(&big, &f), Err(SemanticsError::Budget { letters: 5, states: 5 }));
    }

    #[test]
    fn metavariables_are_grounded() {
        assert_eq!(ground(&p("bullet ?phi -> ?phi")), p("bullet phi -> phi"));
        assert_eq!(ground(&p("?p & p")), p("p_1 & p"));
        let fr = sample().frame().clone();
        assert!(frame_valid(&fr, &p("bullet ?phi -> ?phi")).unwrap());
    }

    #[test]
    fn program_agrees_with_tree_evaluator() {
        let m = sample();
        for text in ["nabla p <-> nabla ~p", "box p | bullet ~p", "circ (p & q) -> diamond p"] {
            let f = p(text);
            let prog = Program::compile(&f);
            let vals: Vec<StateSet> = prog.letters().iter().map(|a| m.value(a)).collect();
            assert_eq!(prog.eval(m.frame(), &vals), truth_set(&m, &f), "{text}");
        }
    }

    #[test]
    fn class_validity_examples() {
        let opts = SearchOptions::default();
        let v = class_valid(&p("nabla p -> bullet p | bullet ~p"), &PropertySet::new(), &opts).unwrap();
        assert_eq!(v.status, Status::ValidUpToBound);

        let one = SearchOptions { max_states: 1, ..SearchOptions::default() };
        let v = class_valid(&p("bullet p -> nabla p"), &PropertySet::new(), &one).unwrap();
        assert_eq!(v.status, Status::Countermodel);
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.model.frame().neighborhood(0).iter().collect::<Vec<_>>(), vec![StateSet::EMPTY]);
        assert_eq!(w.model.value("p"), StateSet(1));
        assert!(v.witness_rechecks());

        let c = PropertySet::from([Property::C]);
        let v = class_valid(&p("bullet p -> nabla p"), &c, &opts).unwrap();
        assert!(v.is_valid_up_to_bound());
    }
}
