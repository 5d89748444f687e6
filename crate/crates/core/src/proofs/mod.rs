//! Hilbert systems E, Ec, EN, M, R and K for ∇ and •, and a derivation checker.
//!
//! Derivations are written one line per step:
//!
//! ```text
//! # comment
//! 1. nabla ?phi -> bullet ?phi | bullet ~?phi ; AX E3
//! 2. bullet ~?phi -> ~?phi ; AX E2
//! 3. nabla ?phi -> bullet ?phi | ~?phi ; CONSEQ 1,2
//! ```
//!
//! Justifications are `AX <name>`, `TAUT`, `MP i j` (line j is line i → this
//! line), `RE-NABLA i`, `RE-BULLET i`, `DEF i` (equal to line i once Δ, ∘, ◇
//! are unfolded) and `CONSEQ i,j,...` (a propositional consequence of the
//! cited lines).

mod checker;
mod schema;
mod script;
mod taut;

use serde::Serialize;
use thiserror::Error;

use crate::formula::Formula;
use crate::model::{class_name, PropertySet};
use crate::search::{SearchError, SearchOptions};
use crate::semantics::{class_valid, Verdict};

pub use checker::{check_derivation, CheckOutcome};
pub use schema::{match_schema, AxiomSchema, AxiomSystem, Substitution, SystemName};
pub use script::{parse_script, Derivation, Justification, Line};
pub use taut::{is_consequence, is_tautology_instance, Skeleton, TAUT_BUDGET};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProofError {
    #[error("propositional skeleton has {0} letters, above the budget of {TAUT_BUDGET}")]
    Budget(usize),
    #[error("script line {line}: {message}")]
    Script { line: usize, message: String },
    #[error("unknown axiom system `{0}`")]
    UnknownSystem(String),
}

/// Instantiates the schema metavariables φ, ψ, χ as p, q, r.
pub fn instantiate_pqr(f: &Formula) -> Formula {
    f.substitute_meta(&|m| match m {
        "phi" => Some(Formula::atom("p")),
        "psi" => Some(Formula::atom("q")),
        "chi" => Some(Formula::atom("r")),
        _ => None,
    })
}

/// One axiom of a soundness run.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub instance: Formula,
    pub verdict: Verdict,
}

/// Bounded soundness of every axiom of a system over a frame class.
#[derive(Debug, Clone, Serialize)]
pub struct SoundnessReport {
    pub system: String,
    pub class: String,
    pub axioms: Vec<AxiomCheck>,
}

impl SoundnessReport {
    pub fn all_valid(&self) -> bool {
        self.axioms.iter().all(|a| a.verdict.is_valid_up_to_bound())
    }

    pub fn render(&self) -> String {
        let mut out = format!("system {} over class {}\n", self.system, self.class);
        for a in &self.axioms {
            let status = if a.verdict.is_valid_up_to_bound() {
                format!("valid up to {} states", a.verdict.bound)
            } else {
                "COUNTERMODEL".to_string()
            };
            out.push_str(&format!("  {:<4} {:<60} {}\n", a.axiom, a.instance.render(), status));
        }
        out
    }
}

/// Checks each axiom of `system`, instantiated at p, q, r, over the
/// system's own frame class.
pub fn axiom_soundness_suite(system: &AxiomSystem, opts: &SearchOptions) -> Result<SoundnessReport, SearchError> {
    axiom_soundness_over(system, &system.class(), opts)
}

/// Like [`axiom_soundness_suite`] but over an arbitrary class.
pub fn axiom_soundness_over(
    system: &AxiomSystem,
    class: &PropertySet,
    opts: &SearchOptions,
) -> Result<SoundnessReport, SearchError> {
    let mut axioms = Vec::new();
    for schema in system.schemas() {
        let instance = instantiate_pqr(&schema.pattern);
        let verdict = class_valid(&instance, class, opts)?;
        axioms.push(AxiomCheck { axiom: schema.name.clone(), instance, verdict });
    }
    Ok(SoundnessReport { system: system.name().to_string(), class: class_name(class), axioms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Property;

    #[test]
    fn monotone_system_is_sound_on_monotone_frames() {
        let m = AxiomSystem::new(SystemName::M);
        let r = axiom_soundness_suite(&m, &SearchOptions::default()).unwrap();
        assert!(r.all_valid(), "{}", r.render());
        assert!(r.axioms.iter().any(|a| a.axiom == "M4"));
    }

    #[test]
    fn k_validates_circ_top_over_filters() {
        let k = AxiomSystem::new(SystemName::K);
        let r = axiom_soundness_suite(&k, &SearchOptions::default()).unwrap();
        assert_eq!(r.class, "filter");
        assert!(r.all_valid());
    }

    #[test]
    fn e4_fails_over_all_frames() {
        let ec = AxiomSystem::new(SystemName::Ec);
        let r = axiom_soundness_over(&ec, &PropertySet::new(), &SearchOptions::default()).unwrap();
        let e4 = r.axioms.iter().find(|a| a.axiom == "E4").unwrap();
        assert!(!e4.verdict.is_valid_up_to_bound());
        assert!(e4.verdict.witness_rechecks());
        let c = PropertySet::from([Property::C]);
        assert_eq!(ec.class(), c);
    }
}
