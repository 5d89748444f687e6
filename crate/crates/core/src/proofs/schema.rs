//! Axiom schemas and the six systems.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::formula::{parse, Formula};
use crate::model::{Property, PropertySet};

use super::ProofError;

/// Metavariable name → formula.
pub type Substitution = BTreeMap<String, Formula>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: String,
    pub pattern: Formula,
}

impl AxiomSchema {
    fn new(name: &str, pattern: &str) -> Self {
        AxiomSchema { name: name.to_string(), pattern: parse(pattern).expect("built-in schema parses") }
    }
}

/// Matches `f` against the schema's pattern after unfolding defined
/// operators on both sides. Metavariables must be bound consistently.
pub fn match_schema(schema: &AxiomSchema, f: &Formula) -> Option<Substitution> {
    let mut sub = Substitution::new();
    go(&schema.pattern.expand_defined(), &f.expand_defined(), &mut sub).then_some(sub)
}

fn go(pat: &Formula, f: &Formula, sub: &mut Substitution) -> bool {
    use Formula::*;
    match (pat, f) {
        (Meta(m), _) => match sub.get(m) {
            Some(bound) => bound == f,
            None => {
                sub.insert(m.clone(), f.clone());
                true
            }
        },
        (Atom(a), Atom(b)) => a == b,
        (Top, Top) | (Bot, Bot) => true,
        (Not(a), Not(b)) | (Nabla(a), Nabla(b)) | (Bullet(a), Bullet(b)) | (Box(a), Box(b)) => go(a, b, sub),
        (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) | (Imp(a, b), Imp(c, d)) | (Iff(a, b), Iff(c, d)) => {
            go(a, c, sub) && go(b, d, sub)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemName {
    E,
    Ec,
    EN,
    M,
    R,
    K,
}

impl SystemName {
    pub const ALL: [SystemName; 6] =
        [SystemName::E, SystemName::Ec, SystemName::EN, SystemName::M, SystemName::R, SystemName::K];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemName::E => "E",
            SystemName::Ec => "Ec",
            SystemName::EN => "EN",
            SystemName::M => "M",
            SystemName::R => "R",
            SystemName::K => "K",
        }
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SystemName {
    type Err = ProofError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| ProofError::UnknownSystem(s.to_string()))
    }
}

/// An axiom system: its schemas plus the rules TAUT, MP, RE-NABLA,
/// RE-BULLET and DEF (and CONSEQ, which TAUT and MP derive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSystem {
    name: SystemName,
    schemas: Vec<AxiomSchema>,
}

const E_AXIOMS: [(&str, &str); 3] = [
    ("E1", "nabla ?phi <-> nabla ~?phi"),
    ("E2", "bullet ?phi -> ?phi"),
    ("E3", "nabla ?phi -> bullet ?phi | bullet ~?phi"),
];
const E4: (&str, &str) = ("E4", "bullet ?phi -> nabla ?phi");
const N: (&str, &str) = ("N", "circ true");
const M_AXIOMS: [(&str, &str); 4] = [
    ("M1", "nabla (?phi | ?psi) & nabla (~?phi | ?chi) -> nabla ?phi"),
    ("M2", "bullet (?phi | ?psi) & bullet (~?phi | ?chi) -> nabla ?phi"),
    ("M3", "bullet (?phi | ?psi) & nabla (~?phi | ?chi) -> nabla ?phi"),
    ("M4", "circ ?phi & ?phi -> delta (?phi | ?psi) & circ (?phi | ?psi)"),
];
const R_AXIOMS: [(&str, &str); 2] =
    [("R1", "delta ?phi & delta ?psi -> delta (?phi & ?psi)"), ("R2", "circ ?phi & circ ?psi -> circ (?phi & ?psi)")];

impl AxiomSystem {
    pub fn new(name: SystemName) -> Self {
        let mut list: Vec<(&str, &str)> = E_AXIOMS.to_vec();
        match name {
            SystemName::E => {}
            SystemName::Ec => list.push(E4),
            SystemName::EN => list.push(N),
            SystemName::M => list.extend(M_AXIOMS),
            SystemName::R => {
                list.extend(M_AXIOMS);
                list.extend(R_AXIOMS);
            }
            SystemName::K => {
                list.extend(M_AXIOMS);
                list.extend(R_AXIOMS);
                list.push(N);
            }
        }
        let schemas = list.into_iter().map(|(n, p)| AxiomSchema::new(n, p)).collect();
        AxiomSystem { name, schemas }
    }

    pub fn by_name(name: &str) -> Result<Self, ProofError> {
        Ok(AxiomSystem::new(name.parse()?))
    }

    pub fn name(&self) -> SystemName {
        self.name
    }

    pub fn schemas(&self) -> &[AxiomSchema] {
        &self.schemas
    }

    pub fn schema(&self, name: &str) -> Option<&AxiomSchema> {
        self.schemas.iter().find(|s| s.name == name)
    }

    /// The frame class the system is sound for.
    pub fn class(&self) -> PropertySet {
        let p = match self.name {
            SystemName::E => return PropertySet::new(),
            SystemName::Ec => Property::C,
            SystemName::EN => Property::N,
            SystemName::M => Property::S,
            SystemName::R => Property::QuasiFilter,
            SystemName::K => Property::Filter,
        };
        PropertySet::from([p])
    }
}
