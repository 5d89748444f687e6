//! Reference implementations used as test oracles.
//!
//! Nothing here calls into the library's evaluator or property checks:
//! models are read back from their file form and every clause is a direct
//! transcription of the definitions over `BTreeSet`s.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use nbhd::formula::Formula;
use nbhd::model::{Model, ModelFile};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Set = BTreeSet<usize>;

/// A model as plain sets of state indices.
#[derive(Debug, Clone)]
pub struct Naive {
    pub states: Vec<String>,
    pub nbhd: Vec<Vec<Set>>,
    pub val: BTreeMap<String, Set>,
}

impl Naive {
    pub fn from_file(mf: &ModelFile) -> Self {
        let idx = |l: &String| mf.states.iter().position(|s| s == l).expect("known state");
        let set = |xs: &Vec<String>| xs.iter().map(idx).collect::<Set>();
        let nbhd =
            mf.states.iter().map(|s| mf.neighborhoods.get(s).map_or(vec![], |f| f.iter().map(set).collect())).collect();
        let val = mf.valuation.clone().unwrap_or_default().iter().map(|(a, xs)| (a.clone(), set(xs))).collect();
        Naive { states: mf.states.clone(), nbhd, val }
    }

    pub fn from_model(m: &Model) -> Self {
        Naive::from_file(&ModelFile::from_model(m))
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn all(&self) -> Set {
        (0..self.size()).collect()
    }

    fn member(&self, s: usize, x: &Set) -> bool {
        self.nbhd[s].iter().any(|y| y == x)
    }

    fn ext(&self, f: &Formula) -> Set {
        (0..self.size()).filter(|&u| self.holds(u, f)).collect()
    }

    fn minus(&self, x: &Set) -> Set {
        self.all().difference(x).copied().collect()
    }

    /// M, s ⊨ f, clause by clause.
    pub fn holds(&self, s: usize, f: &Formula) -> bool {
        match f {
            Formula::Atom(a) => self.val.get(a).is_some_and(|x| x.contains(&s)),
            Formula::Meta(m) => panic!("metavariable ?{m} has no truth value"),
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(a) => !self.holds(s, a),
            Formula::And(a, b) => self.holds(s, a) && self.holds(s, b),
            Formula::Or(a, b) => self.holds(s, a) || self.holds(s, b),
            Formula::Imp(a, b) => !self.holds(s, a) || self.holds(s, b),
            Formula::Iff(a, b) => self.holds(s, a) == self.holds(s, b),
            Formula::Nabla(a) => {
                let x = self.ext(a);
                !self.member(s, &x) && !self.member(s, &self.minus(&x))
            }
            Formula::Bullet(a) => self.holds(s, a) && !self.member(s, &self.ext(a)),
            Formula::Box(a) => self.member(s, &self.ext(a)),
            Formula::Delta(a) => {
                let x = self.ext(a);
                self.member(s, &x) || self.member(s, &self.minus(&x))
            }
            Formula::Circ(a) => !self.holds(s, a) || self.member(s, &self.ext(a)),
            Formula::Diamond(a) => !self.member(s, &self.minus(&self.ext(a))),
        }
    }

    pub fn truth_set(&self, f: &Formula) -> Set {
        self.ext(f)
    }

    /// Every subset of S.
    pub fn subsets(&self) -> Vec<Set> {
        let n = self.size();
        (0..1u32 << n).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
    }

    /// The named property, transcribed from its definition.
    pub fn property(&self, name: &str) -> bool {
        let subsets = self.subsets();
        let all = self.all();
        let each = |p: &dyn Fn(usize) -> bool| (0..self.size()).all(p);
        match name {
            "n" => each(&|s| self.member(s, &all)),
            "r" => each(&|s| {
                let fam = &self.nbhd[s];
                if fam.is_empty() {
                    return true;
                }
                let core = fam.iter().fold(all.clone(), |acc, x| acc.intersection(x).copied().collect());
                self.member(s, &core)
            }),
            "i" => each(&|s| {
                let fam = &self.nbhd[s];
                fam.iter().all(|x| fam.iter().all(|y| self.member(s, &x.intersection(y).copied().collect())))
            }),
            "s" => each(&|s| {
                self.nbhd[s].iter().all(|x| subsets.iter().filter(|y| x.is_subset(y)).all(|y| self.member(s, y)))
            }),
            "c" => each(&|s| self.nbhd[s].iter().all(|x| self.member(s, &self.minus(x)))),
            "d" => each(&|s| self.nbhd[s].iter().all(|x| !self.member(s, &self.minus(x)))),
            "t" => each(&|s| self.nbhd[s].iter().all(|x| x.contains(&s))),
            "b" => each(&|s| {
                subsets.iter().filter(|x| x.contains(&s)).all(|x| {
                    let y: Set = (0..self.size()).filter(|&u| !self.member(u, &self.minus(x))).collect();
                    self.member(s, &y)
                })
            }),
            "4" => each(&|s| {
                self.nbhd[s].iter().all(|x| {
                    let y: Set = (0..self.size()).filter(|&u| self.member(u, x)).collect();
                    self.member(s, &y)
                })
            }),
            "5" => each(&|s| {
                subsets.iter().filter(|x| !self.member(s, x)).all(|x| {
                    let y: Set = (0..self.size()).filter(|&u| !self.member(u, x)).collect();
                    self.member(s, &y)
                })
            }),
            "quasi-filter" => self.property("i") && self.property("s"),
            "filter" => self.property("quasi-filter") && self.property("n"),
            "monotone" => self.property("s"),
            other => panic!("unknown property {other}"),
        }
    }
}

/// Which operators a random formula may use.
#[derive(Debug, Clone, Copy)]
pub struct Ops {
    pub nabla: bool,
    pub bullet: bool,
    pub boxed: bool,
    pub sugar: bool,
}

impl Ops {
    pub const ALL: Ops = Ops { nabla: true, bullet: true, boxed: true, sugar: true };
    pub const BULLET: Ops = Ops { nabla: false, bullet: true, boxed: false, sugar: false };
}

/// A random formula of modal depth at most `depth` over `atoms`.
pub fn random_formula(rng: &mut ChaCha8Rng, depth: usize, atoms: &[&str], ops: Ops) -> Formula {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..atoms.len() + 2) {
        k if k < atoms.len() => Formula::atom(atoms[k]),
        k if k == atoms.len() => Formula::Top,
        _ => Formula::Bot,
    };
    go(rng, depth, depth + 2, ops, &leaf)
}

fn go(rng: &mut ChaCha8Rng, depth: usize, fuel: usize, ops: Ops, leaf: &dyn Fn(&mut ChaCha8Rng) -> Formula) -> Formula {
    if fuel == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    let mut kinds: Vec<u8> = vec![0, 1, 2, 3, 4];
    if depth > 0 {
        if ops.nabla {
            kinds.extend([5, 5]);
        }
        if ops.bullet {
            kinds.extend([6, 6]);
        }
        if ops.boxed {
            kinds.push(7);
        }
        if ops.sugar {
            kinds.extend([8, 9, 10]);
        }
    }
    let k = kinds[rng.gen_range(0..kinds.len())];
    let sub = |rng: &mut ChaCha8Rng, d: usize| go(rng, d, fuel - 1, ops, leaf);
    match k {
        0 => Formula::not(sub(rng, depth)),
        1 => Formula::and(sub(rng, depth), sub(rng, depth)),
        2 => Formula::or(sub(rng, depth), sub(rng, depth)),
        3 => Formula::imp(sub(rng, depth), sub(rng, depth)),
        4 => Formula::iff(sub(rng, depth), sub(rng, depth)),
        5 => Formula::nabla(sub(rng, depth - 1)),
        6 => Formula::bullet(sub(rng, depth - 1)),
        7 => Formula::boxed(sub(rng, depth - 1)),
        8 => Formula::delta(sub(rng, depth - 1)),
        9 => Formula::circ(sub(rng, depth - 1)),
        _ => Formula::diamond(sub(rng, depth - 1)),
    }
}

/// A random model with `n` states and the given letters.
pub fn random_model(rng: &mut ChaCha8Rng, n: usize, atoms: &[&str]) -> Model {
    let labels: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let nbhd = (0..n)
        .map(|_| (0..1u32 << n).filter(|_| rng.gen_bool(0.4)).map(nbhd::model::StateSet).collect::<Vec<_>>())
        .collect();
    let frame = nbhd::model::Frame::new(labels, nbhd).expect("valid frame");
    let val = atoms.iter().map(|a| (a.to_string(), nbhd::model::StateSet(rng.gen_range(0..1u32 << n)))).collect();
    frame.with_valuation(val).expect("valid valuation")
}

/// Script, step, replacement body: each mutation must be rejected at that step.
pub const MUTATIONS: [(&str, usize, &str); 5] = [
    ("scripts/rules.prf", 7, "bullet ~~?phi -> ?phi ; MP 4 6"),
    ("scripts/nabla_truth_bullet.prf", 2, "bullet ~?phi -> ~?phi ; AX E3"),
    ("scripts/rules.prf", 2, "nabla ~~?phi <-> nabla ?phi ; RE-NABLA 1"),
    ("scripts/nabla_truth_bullet.prf", 4, "nabla ?phi & ?phi -> bullet ~?phi ; CONSEQ 3"),
    ("scripts/bullet_elim.prf", 3, "bullet (circ ?phi | ?psi -> ?phi) -> (circ ?phi -> ?phi) ; CONSEQ 1,4"),
];

pub const SCRIPTS: [&str; 3] = ["scripts/nabla_truth_bullet.prf", "scripts/bullet_elim.prf", "scripts/rules.prf"];

/// Replaces the body of step `k` in a script.
pub fn mutate(text: &str, k: usize, body: &str) -> String {
    let prefix = format!("{k}. ");
    text.lines()
        .map(|l| if l.starts_with(&prefix) { format!("{prefix}{body}") } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn crate_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(crate_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Runs the CLI in-process.
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = nbhd::cli::run(std::iter::once("nbhd").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
