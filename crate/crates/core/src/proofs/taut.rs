//! Propositional skeletons and truth tables.
//!
//! The skeleton of a formula replaces each maximal modal subformula, atom
//! and metavariable by a propositional letter, with equal subformulas
//! sharing a letter.

use std::collections::HashMap;

use crate::formula::Formula;

use super::ProofError;

/// Largest number of skeleton letters a truth table may range over.
pub const TAUT_BUDGET: usize = 16;

/// Letters shared across several formulas.
#[derive(Debug, Default)]
pub struct Skeleton {
    letters: HashMap<Formula, usize>,
}

#[derive(Debug, Clone)]
enum Prop {
    Letter(usize),
    Const(bool),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Imp(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

impl Prop {
    fn eval(&self, row: u32) -> bool {
        match self {
            Prop::Letter(i) => row >> i & 1 == 1,
            Prop::Const(b) => *b,
            Prop::Not(a) => !a.eval(row),
            Prop::And(a, b) => a.eval(row) && b.eval(row),
            Prop::Or(a, b) => a.eval(row) || b.eval(row),
            Prop::Imp(a, b) => !a.eval(row) || b.eval(row),
            Prop::Iff(a, b) => a.eval(row) == b.eval(row),
        }
    }
}

impl Skeleton {
    pub fn new() -> Self {
        Skeleton::default()
    }

    pub fn letters(&self) -> usize {
        self.letters.len()
    }

    fn abstract_(&mut self, f: &Formula) -> Prop {
        let bx = |p: Prop| Box::new(p);
        match f {
            Formula::Top => Prop::Const(true),
            Formula::Bot => Prop::Const(false),
            Formula::Not(a) => Prop::Not(bx(self.abstract_(a))),
            Formula::And(a, b) => Prop::And(bx(self.abstract_(a)), bx(self.abstract_(b))),
            Formula::Or(a, b) => Prop::Or(bx(self.abstract_(a)), bx(self.abstract_(b))),
            Formula::Imp(a, b) => Prop::Imp(bx(self.abstract_(a)), bx(self.abstract_(b))),
            Formula::Iff(a, b) => Prop::Iff(bx(self.abstract_(a)), bx(self.abstract_(b))),
            leaf => {
                let next = self.letters.len();
                Prop::Letter(*self.letters.entry(leaf.clone()).or_insert(next))
            }
        }
    }
}

/// True iff `premises` propositionally entail `conclusion`.
pub fn is_consequence(premises: &[&Formula], conclusion: &Formula) -> Result<bool, ProofError> {
    let mut sk = Skeleton::new();
    let ps: Vec<Prop> = premises.iter().map(|p| sk.abstract_(&p.expand_defined())).collect();
    let c = sk.abstract_(&conclusion.expand_defined());
    let k = sk.letters();
    if k > TAUT_BUDGET {
        return Err(ProofError::Budget(k));
    }
    Ok((0..1u32 << k).all(|row| !ps.iter().all(|p| p.eval(row)) || c.eval(row)))
}

/// True iff the propositional skeleton of `f` is a tautology.
pub fn is_tautology_instance(f: &Formula) -> Result<bool, ProofError> {
    is_consequence(&[], f)
}
