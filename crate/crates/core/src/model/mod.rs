//! Finite neighborhood frames and models.
//!
//! States are numbered `0..n` and carry string labels. Subsets of the state
//! space are [`StateSet`] bitmasks; a neighborhood `N(s)` is a [`SetFamily`],
//! a bitset over the powerset indexed by the subsets' bitmasks, so it is
//! canonical by construction and membership is a single bit test.

mod io;
mod properties;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use smallvec::SmallVec;
use thiserror::Error;

pub use io::{Document, ModelFile};
pub use properties::{class_name, parse_class, Property, PropertySet};

/// Hard cap on the number of states.
pub const MAX_STATES: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("a frame needs at least one state")]
    NoStates,
    #[error("{0} states exceed the limit of {MAX_STATES}")]
    TooManyStates(usize),
    #[error("duplicate state label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid state label `{0}`")]
    InvalidLabel(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("neighborhood of `{state}` lists the set {set} twice")]
    DuplicateNeighborhood { state: String, set: String },
    #[error("set mentions state index {0}, outside the frame")]
    OutOfRange(usize),
    #[error("no neighborhood given for state `{0}`")]
    MissingNeighborhood(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("expected {expected} neighborhoods, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("malformed model file: {0}")]
    Json(String),
}

/// A subset of the states `0..n`, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct StateSet(pub u32);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_STATES);
        StateSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        StateSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(StateSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        StateSet(self.0 | 1 << i)
    }

    pub fn union(self, o: StateSet) -> Self {
        StateSet(self.0 | o.0)
    }

    pub fn intersection(self, o: StateSet) -> Self {
        StateSet(self.0 & o.0)
    }

    /// Complement relative to a frame with `n` states.
    pub fn complement(self, n: usize) -> Self {
        StateSet(!self.0 & StateSet::full(n).0)
    }

    pub fn is_subset(self, o: StateSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// Every subset of `0..n`, in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = StateSet> {
        (0..1u64 << n).map(|b| StateSet(b as u32))
    }

    /// Renders the set with the given labels, e.g. `{s,t}`.
    pub fn show(self, labels: &[String]) -> String {
        let names: Vec<&str> = self.iter().map(|i| labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A family of subsets of an `n`-state space, stored as a bitset over the
/// powerset. Iteration is in increasing bitmask order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    words: SmallVec<[u64; 1]>,
}

impl SetFamily {
    /// The empty family over `n` states.
    pub fn empty(n: usize) -> Self {
        let words = (1usize << n).div_ceil(64);
        SetFamily { words: SmallVec::from_elem(0, words) }
    }

    /// The family of all subsets of `n` states.
    pub fn powerset(n: usize) -> Self {
        let mut f = SetFamily::empty(n);
        for x in StateSet::all(n) {
            f.insert(x);
        }
        f
    }

    /// For `n ≤ 6`, the family whose membership bits are `bits`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        debug_assert!(n <= 6);
        let mask = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        let mut words = SmallVec::new();
        words.push(bits & mask);
        SetFamily { words }
    }

    /// For `n ≤ 6`, the membership bits.
    pub fn bits(&self) -> u64 {
        self.words[0]
    }

    pub fn contains(&self, x: StateSet) -> bool {
        let b = x.0 as usize;
        self.words[b >> 6] >> (b & 63) & 1 == 1
    }

    /// Adds `x`; returns false if it was already present.
    pub fn insert(&mut self, x: StateSet) -> bool {
        let b = x.0 as usize;
        let had = self.contains(x);
        self.words[b >> 6] |= 1 << (b & 63);
        !had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = StateSet> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(StateSet((wi * 64 + b) as u32))
            })
        })
    }

    pub fn is_subfamily(&self, o: &SetFamily) -> bool {
        self.words.iter().zip(o.words.iter()).all(|(a, b)| a & !b == 0)
    }
}

/// A finite neighborhood frame ⟨S, N⟩.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    labels: Arc<[String]>,
    nbhd: Vec<SetFamily>,
}

pub(crate) fn valid_label(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == ',' || c == '=' || c == '"')
}

impl Frame {
    /// Builds a frame from labels and one list of sets per state.
    /// Listing the same set twice in one neighborhood is an error.
    pub fn new(labels: Vec<String>, neighborhoods: Vec<Vec<StateSet>>) -> Result<Self, ModelError> {
        let labels = check_labels(labels)?;
        let n = labels.len();
        if neighborhoods.len() != n {
            return Err(ModelError::Arity { expected: n, got: neighborhoods.len() });
        }
        let full = StateSet::full(n);
        let mut nbhd = Vec::with_capacity(n);
        for (i, sets) in neighborhoods.into_iter().enumerate() {
            let mut fam = SetFamily::empty(n);
            for x in sets {
                if !x.is_subset(full) {
                    return Err(ModelError::OutOfRange(32 - (x.0.leading_zeros() as usize) - 1));
                }
                if !fam.insert(x) {
                    return Err(ModelError::DuplicateNeighborhood { state: labels[i].clone(), set: x.show(&labels) });
                }
            }
            nbhd.push(fam);
        }
        Ok(Frame { labels, nbhd })
    }

    /// Builds a frame from ready-made families, which must be over `labels.len()` states.
    pub fn from_families(labels: Arc<[String]>, nbhd: Vec<SetFamily>) -> Self {
        debug_assert_eq!(labels.len(), nbhd.len());
        Frame { labels, nbhd }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn shared_labels(&self) -> Arc<[String]> {
        self.labels.clone()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, ModelError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| ModelError::UnknownState(label.to_string()))
    }

    pub fn full(&self) -> StateSet {
        StateSet::full(self.size())
    }

    pub fn neighborhood(&self, s: usize) -> &SetFamily {
        &self.nbhd[s]
    }

    pub fn neighborhoods(&self) -> &[SetFamily] {
        &self.nbhd
    }

    /// X ∈ N(s)
    pub fn in_nbhd(&self, s: usize, x: StateSet) -> bool {
        self.nbhd[s].contains(x)
    }

    /// {u : X ∈ N(u)}
    pub fn box_image(&self, x: StateSet) -> StateSet {
        StateSet::from_indices((0..self.size()).filter(|&u| self.nbhd[u].contains(x)))
    }

    /// ⋂N(s), with ⋂∅ = S.
    pub fn core(&self, s: usize) -> StateSet {
        self.nbhd[s].iter().fold(self.full(), StateSet::intersection)
    }

    /// Superset closure of every neighborhood.
    pub fn supplementation(&self) -> Frame {
        let n = self.size();
        let nbhd = self
            .nbhd
            .iter()
            .map(|fam| {
                let mut up = SetFamily::empty(n);
                for x in StateSet::all(n) {
                    if fam.iter().any(|y| y.is_subset(x)) {
                        up.insert(x);
                    }
                }
                up
            })
            .collect();
        Frame { labels: self.labels.clone(), nbhd }
    }

    pub fn has_property(&self, p: Property) -> bool {
        properties::holds(self, p)
    }

    /// Pairs the frame with a valuation.
    pub fn with_valuation(&self, valuation: BTreeMap<String, StateSet>) -> Result<Model, ModelError> {
        Model::new(self.clone(), valuation)
    }

    /// Renders `N(s) = {...}` lines.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for s in 0..self.size() {
            let sets: Vec<String> = self.nbhd[s].iter().map(|x| x.show(&self.labels)).collect();
            out.push_str(&format!("N({}) = {{{}}}\n", self.labels[s], sets.join(", ")));
        }
        out
    }
}

fn check_labels(labels: Vec<String>) -> Result<Arc<[String]>, ModelError> {
    if labels.is_empty() {
        return Err(ModelError::NoStates);
    }
    if labels.len() > MAX_STATES {
        return Err(ModelError::TooManyStates(labels.len()));
    }
    for (i, l) in labels.iter().enumerate() {
        if !valid_label(l) {
            return Err(ModelError::InvalidLabel(l.clone()));
        }
        if labels[..i].contains(l) {
            return Err(ModelError::DuplicateLabel(l.clone()));
        }
    }
    Ok(labels.into())
}

/// A neighborhood model ⟨S, N, V⟩. Atoms missing from the valuation are false everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<String, StateSet>,
}

impl Model {
    pub fn new(frame: Frame, valuation: BTreeMap<String, StateSet>) -> Result<Self, ModelError> {
        let full = frame.full();
        for (a, x) in &valuation {
            if !crate::formula::is_atom_name(a) {
                return Err(ModelError::InvalidAtom(a.clone()));
            }
            if !x.is_subset(full) {
                return Err(ModelError::OutOfRange(32 - (x.0.leading_zeros() as usize) - 1));
            }
        }
        Ok(Model { frame, valuation })
    }

    /// A model with the empty valuation.
    pub fn bare(frame: Frame) -> Self {
        Model { frame, valuation: BTreeMap::new() }
    }

    pub(crate) fn from_parts(frame: Frame, valuation: BTreeMap<String, StateSet>) -> Self {
        Model { frame, valuation }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
        &self.valuation
    }

    /// V(a), or ∅ if `a` is unassigned.
    pub fn value(&self, atom: &str) -> StateSet {
        self.valuation.get(atom).copied().unwrap_or_default()
    }

    pub fn size(&self) -> usize {
        self.frame.size()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, ModelError> {
        self.frame.index_of(label)
    }

    pub fn describe(&self) -> String {
        let mut out = format!("S = {}\n", self.frame.full().show(self.frame.labels()));
        out.push_str(&self.frame.describe());
        for (a, x) in &self.valuation {
            out.push_str(&format!("V({a}) = {}\n", x.show(self.frame.labels())));
        }
        out
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S = {}\n{}", self.full().show(self.labels()), self.describe())
    }
}
