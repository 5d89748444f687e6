//! Exact fragment distinguishability of two pointed models.
//!
//! A [`DefinablePair`] `(X, X′)` records that some formula of the fragment
//! has truth set X in the left model and X′ in the right one. The pool of
//! such pairs starts from the atoms, ⊥ and ⊤ and is closed under
//! complement, intersection and the fragment's modal images. Since every
//! formula's pair of truth sets lands in the pool and every pool element
//! comes from a formula, two points are distinguishable iff some pair
//! separates them.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::formula::{Formula, Fragment};
use crate::model::{Frame, Model, ModelError, StateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DefinablePair {
    pub left: StateSet,
    pub right: StateSet,
}

/// How a pool element was produced; indices point to earlier elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Atom(String),
    Bot,
    Top,
    Not(usize),
    And(usize, usize),
    Nabla(usize),
    Bullet(usize),
    Box(usize),
}

/// The closed pool, in discovery order.
#[derive(Debug, Clone)]
pub struct Pool {
    pairs: Vec<DefinablePair>,
    steps: Vec<Step>,
}

impl Pool {
    pub fn pairs(&self) -> &[DefinablePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn step(&self, i: usize) -> &Step {
        &self.steps[i]
    }

    /// Rebuilds a formula whose truth sets are pair `i`.
    pub fn formula(&self, i: usize) -> Formula {
        match &self.steps[i] {
            Step::Atom(a) => Formula::Atom(a.clone()),
            Step::Bot => Formula::Bot,
            Step::Top => Formula::Top,
            Step::Not(j) => Formula::not(self.formula(*j)),
            Step::And(j, k) => Formula::and(self.formula(*j), self.formula(*k)),
            Step::Nabla(j) => Formula::nabla(self.formula(*j)),
            Step::Bullet(j) => Formula::bullet(self.formula(*j)),
            Step::Box(j) => Formula::boxed(self.formula(*j)),
        }
    }

    /// One line per element, e.g. `#3 = nabla #0  ({s,t}, {t'})`.
    pub fn trace(&self, i: usize, left: &[String], right: &[String]) -> Vec<String> {
        let mut needed = BTreeSet::new();
        self.collect(i, &mut needed);
        needed
            .into_iter()
            .map(|j| {
                let how = match &self.steps[j] {
                    Step::Atom(a) => a.clone(),
                    Step::Bot => "false".into(),
                    Step::Top => "true".into(),
                    Step::Not(a) => format!("~#{a}"),
                    Step::And(a, b) => format!("#{a} & #{b}"),
                    Step::Nabla(a) => format!("nabla #{a}"),
                    Step::Bullet(a) => format!("bullet #{a}"),
                    Step::Box(a) => format!("box #{a}"),
                };
                let p = self.pairs[j];
                format!("#{j} = {how}  ({}, {})", p.left.show(left), p.right.show(right))
            })
            .collect()
    }

    fn collect(&self, i: usize, out: &mut BTreeSet<usize>) {
        if !out.insert(i) {
            return;
        }
        match &self.steps[i] {
            Step::Atom(_) | Step::Bot | Step::Top => {}
            Step::Not(j) | Step::Nabla(j) | Step::Bullet(j) | Step::Box(j) => self.collect(*j, out),
            Step::And(j, k) => {
                self.collect(*j, out);
                self.collect(*k, out);
            }
        }
    }
}

/// A formula true at one point and false at the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub formula: Formula,
    /// Truth value at the left point.
    pub left: bool,
    /// Truth value at the right point.
    pub right: bool,
    pub trace: Vec<String>,
}

/// Atoms with a nonempty valuation in either model.
pub fn default_vocab(m: &Model, m2: &Model) -> BTreeSet<String> {
    m.valuation().iter().chain(m2.valuation()).filter(|(_, x)| !x.is_empty()).map(|(a, _)| a.clone()).collect()
}

fn nabla_image(fr: &Frame, x: StateSet) -> StateSet {
    let c = x.complement(fr.size());
    StateSet::from_indices((0..fr.size()).filter(|&u| !fr.in_nbhd(u, x) && !fr.in_nbhd(u, c)))
}

fn bullet_image(fr: &Frame, x: StateSet) -> StateSet {
    StateSet::from_indices(x.iter().filter(|&u| !fr.in_nbhd(u, x)))
}

struct Builder<'a> {
    left: &'a Frame,
    right: &'a Frame,
    pool: Pool,
    index: HashMap<DefinablePair, usize>,
    queue: VecDeque<usize>,
}

impl Builder<'_> {
    fn add(&mut self, pair: DefinablePair, step: Step) -> Option<usize> {
        if self.index.contains_key(&pair) {
            return None;
        }
        let i = self.pool.pairs.len();
        self.pool.pairs.push(pair);
        self.pool.steps.push(step);
        self.index.insert(pair, i);
        self.queue.push_back(i);
        Some(i)
    }
}

/// Closes the pool, stopping early once `stop` accepts a new pair.
fn close(
    m: &Model,
    m2: &Model,
    frag: Fragment,
    vocab: &BTreeSet<String>,
    stop: &dyn Fn(DefinablePair) -> bool,
) -> (Pool, Option<usize>) {
    let (n, n2) = (m.size(), m2.size());
    let mut b = Builder {
        left: m.frame(),
        right: m2.frame(),
        pool: Pool { pairs: Vec::new(), steps: Vec::new() },
        index: HashMap::new(),
        queue: VecDeque::new(),
    };
    let mut seeds: Vec<(DefinablePair, Step)> =
        vocab.iter().map(|a| (DefinablePair { left: m.value(a), right: m2.value(a) }, Step::Atom(a.clone()))).collect();
    seeds.push((DefinablePair { left: StateSet::EMPTY, right: StateSet::EMPTY }, Step::Bot));
    seeds.push((DefinablePair { left: m.frame().full(), right: m2.frame().full() }, Step::Top));
    for (pair, step) in seeds {
        if let Some(i) = b.add(pair, step) {
            if stop(pair) {
                return (b.pool, Some(i));
            }
        }
    }
    while let Some(i) = b.queue.pop_front() {
        let DefinablePair { left: x, right: y } = b.pool.pairs[i];
        let mut new = vec![(DefinablePair { left: x.complement(n), right: y.complement(n2) }, Step::Not(i))];
        if frag.nabla {
            let pair = DefinablePair { left: nabla_image(b.left, x), right: nabla_image(b.right, y) };
            new.push((pair, Step::Nabla(i)));
        }
        if frag.bullet {
            let pair = DefinablePair { left: bullet_image(b.left, x), right: bullet_image(b.right, y) };
            new.push((pair, Step::Bullet(i)));
        }
        if frag.boxed {
            let pair = DefinablePair { left: b.left.box_image(x), right: b.right.box_image(y) };
            new.push((pair, Step::Box(i)));
        }
        for j in 0..=i {
            let o = b.pool.pairs[j];
            let pair = DefinablePair { left: x.intersection(o.left), right: y.intersection(o.right) };
            new.push((pair, Step::And(j, i)));
        }
        for (pair, step) in new {
            if let Some(k) = b.add(pair, step) {
                if stop(pair) {
                    return (b.pool, Some(k));
                }
            }
        }
    }
    (b.pool, None)
}

/// The full pool of pairs definable in `frag` over `vocab`.
pub fn definable_pairs(m: &Model, m2: &Model, frag: Fragment, vocab: &BTreeSet<String>) -> Pool {
    close(m, m2, frag, vocab, &|_| false).0
}

/// A formula of `frag` over `vocab` separating `(m, s)` from `(m2, s2)`, or
/// `None` if the points agree on every such formula.
pub fn distinguishable(
    m: &Model,
    s: &str,
    m2: &Model,
    s2: &str,
    frag: Fragment,
    vocab: &BTreeSet<String>,
) -> Result<Option<Witness>, ModelError> {
    let i = m.index_of(s)?;
    let j = m2.index_of(s2)?;
    let (pool, hit) = close(m, m2, frag, vocab, &|p| p.left.contains(i) != p.right.contains(j));
    Ok(hit.map(|k| Witness {
        formula: pool.formula(k),
        left: pool.pairs[k].left.contains(i),
        right: pool.pairs[k].right.contains(j),
        trace: pool.trace(k, m.frame().labels(), m2.frame().labels()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::truth_set;
    use std::collections::BTreeMap;

    fn model(labels: &[&str], nbhd: &[&[u32]], p: u32) -> Model {
        let fr = Frame::new(
            labels.iter().map(|s| s.to_string()).collect(),
            nbhd.iter().map(|f| f.iter().map(|&b| StateSet(b)).collect()).collect(),
        )
        .unwrap();
        fr.with_valuation(BTreeMap::from([("p".to_string(), StateSet(p))])).unwrap()
    }

    fn vocab() -> BTreeSet<String> {
        BTreeSet::from(["p".to_string()])
    }

    /// N(s)=N(t)={S}, V(p)={t}  versus  N(s')={{t'},S'}, N(t')={S'}, V(p)={t'}
    fn pair() -> (Model, Model) {
        (model(&["s", "t"], &[&[3], &[3]], 2), model(&["s'", "t'"], &[&[2, 3], &[3]], 2))
    }

    #[test]
    fn bullet_cannot_separate() {
        let (m, m2) = pair();
        let w = distinguishable(&m, "s", &m2, "s'", Fragment::BULLET, &vocab()).unwrap();
        assert_eq!(w, None);
    }

    #[test]
    fn nabla_separates() {
        let (m, m2) = pair();
        let w = distinguishable(&m, "s", &m2, "s'", Fragment::NABLA, &vocab()).unwrap().unwrap();
        assert_eq!(w.formula, parse("nabla p").unwrap());
        assert!(w.left && !w.right);
        assert!(!w.trace.is_empty());
    }

    #[test]
    fn pool_formulas_reproduce_pairs() {
        let (m, m2) = pair();
        let pool = definable_pairs(&m, &m2, Fragment::NABLA_BULLET, &vocab());
        for (i, p) in pool.pairs().iter().enumerate() {
            let f = pool.formula(i);
            assert_eq!(truth_set(&m, &f), p.left);
            assert_eq!(truth_set(&m2, &f), p.right);
        }
        assert!(pool.len() <= 16);
    }

    #[test]
    fn default_vocab_skips_empty_atoms() {
        let m = model(&["s"], &[&[]], 0);
        let m2 = model(&["s"], &[&[]], 1);
        assert_eq!(default_vocab(&m, &m), BTreeSet::new());
        assert_eq!(default_vocab(&m, &m2), vocab());
    }
}
