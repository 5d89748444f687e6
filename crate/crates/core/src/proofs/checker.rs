//! Line-by-line derivation checking.

use serde::Serialize;

use crate::formula::Formula;

use super::schema::{match_schema, AxiomSystem};
use super::script::{Derivation, Justification};
use super::taut::{is_consequence, is_tautology_instance};
use super::ProofError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CheckOutcome {
    Accepted { lines: usize },
    Rejected { line: usize, reason: String },
}

impl CheckOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckOutcome::Accepted { .. })
    }
}

/// Verifies every line in order and stops at the first bad one.
pub fn check_derivation(system: &AxiomSystem, d: &Derivation) -> Result<CheckOutcome, ProofError> {
    let expanded: Vec<Formula> = d.lines.iter().map(|l| l.formula.expand_defined()).collect();
    for (i, line) in d.lines.iter().enumerate() {
        let k = line.number;
        let reject = |reason: String| Ok(CheckOutcome::Rejected { line: k, reason });
        if let Some(bad) = line.justification.refs().into_iter().find(|&r| r == 0 || r >= k) {
            return reject(format!("cites line {bad}, which does not precede line {k}"));
        }
        let at = |r: usize| &expanded[r - 1];
        let this = &expanded[i];
        let ok = match &line.justification {
            Justification::Axiom(name) => match system.schema(name) {
                None => return reject(format!("system {} has no axiom {name}", system.name())),
                Some(s) => match_schema(s, this).is_some(),
            },
            Justification::Taut => is_tautology_instance(this)?,
            Justification::Mp(a, b) => *at(*b) == Formula::imp(at(*a).clone(), this.clone()),
            Justification::ReNabla(a) => match at(*a) {
                Formula::Iff(x, y) => {
                    *this == Formula::iff(Formula::nabla((**x).clone()), Formula::nabla((**y).clone()))
                }
                _ => false,
            },
            Justification::ReBullet(a) => match at(*a) {
                Formula::Iff(x, y) => {
                    *this == Formula::iff(Formula::bullet((**x).clone()), Formula::bullet((**y).clone()))
                }
                _ => false,
            },
            Justification::Def(a) => at(*a) == this,
            Justification::Conseq(refs) => {
                let premises: Vec<&Formula> = refs.iter().map(|&r| at(r)).collect();
                is_consequence(&premises, this)?
            }
        };
        if !ok {
            return reject(format!("{} does not justify `{}`", line.justification, line.formula));
        }
    }
    Ok(CheckOutcome::Accepted { lines: d.lines.len() })
}
