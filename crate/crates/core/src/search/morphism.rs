//! •-morphisms between models.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{Model, ModelError, StateSet};

/// Why a map is not a •-morphism.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismFailure {
    #[error("(Var) fails: {atom} is {left} at {state} but {right} at its image")]
    Var { atom: String, state: String, left: bool, right: bool },
    #[error("(•-Mor) fails at {state} for X' = {set}")]
    Bullet { state: String, set: String },
}

/// Parses `s=s',t=t'` into an index map from `m` to `m2`. Every state of
/// `m` must be mapped exactly once.
pub fn parse_map(m: &Model, m2: &Model, text: &str) -> Result<Vec<usize>, ModelError> {
    let mut map = vec![None; m.size()];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = part.split_once('=').ok_or_else(|| ModelError::UnknownState(part.to_string()))?;
        let i = m.index_of(a.trim())?;
        let j = m2.index_of(b.trim())?;
        if map[i].replace(j).is_some() {
            return Err(ModelError::DuplicateLabel(a.trim().to_string()));
        }
    }
    map.iter()
        .enumerate()
        .map(|(i, j)| j.ok_or_else(|| ModelError::UnknownState(format!("{} has no image", m.frame().label(i)))))
        .collect()
}

/// Checks (Var) for every atom of either valuation and (•-Mor) for every
/// state and every X′ ⊆ S′:
/// `s ∈ f⁻¹X′ ∧ f⁻¹X′ ∉ N(s)  ⟺  f(s) ∈ X′ ∧ X′ ∉ N′(f(s))`.
pub fn check_bullet_morphism(m: &Model, m2: &Model, map: &[usize]) -> Result<(), MorphismFailure> {
    let (fr, fr2) = (m.frame(), m2.frame());
    assert_eq!(map.len(), fr.size(), "map must be total");
    let atoms: BTreeSet<&String> = m.valuation().keys().chain(m2.valuation().keys()).collect();
    for a in atoms {
        for (s, &fs) in map.iter().enumerate() {
            let left = m.value(a).contains(s);
            let right = m2.value(a).contains(fs);
            if left != right {
                return Err(MorphismFailure::Var { atom: a.clone(), state: fr.label(s).to_string(), left, right });
            }
        }
    }
    for x2 in StateSet::all(fr2.size()) {
        let pre = StateSet::from_indices((0..fr.size()).filter(|&u| x2.contains(map[u])));
        for (s, &fs) in map.iter().enumerate() {
            let lhs = pre.contains(s) && !fr.in_nbhd(s, pre);
            let rhs = x2.contains(fs) && !fr2.in_nbhd(fs, x2);
            if lhs != rhs {
                return Err(MorphismFailure::Bullet { state: fr.label(s).to_string(), set: x2.show(fr2.labels()) });
            }
        }
    }
    Ok(())
}
