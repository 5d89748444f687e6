//! Formulas of the bimodal language with ∇ (ignorance whether), • (ignorance
//! of / unknown truth) and □, together with their duals Δ, ∘ and ◇.
//!
//! The three duals are *defined* operators. The parser desugars them
//! eagerly (`delta p` parses as `~nabla p`), so everything that comes out
//! of [`parse`] is already in primitive form. Hand-built trees may still
//! carry [`Formula::Delta`], [`Formula::Circ`] and [`Formula::Diamond`];
//! [`Formula::expand_defined`] removes them.

mod parse;
mod render;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse, ParseError};

/// A formula tree.
///
/// `Meta` leaves are schema metavariables (`?phi` in concrete syntax). They
/// only occur in axiom patterns and schematic derivations; semantically they
/// behave like propositional letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Meta(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Nabla(Box<Formula>),
    Bullet(Box<Formula>),
    Box(Box<Formula>),
    /// Δφ := ¬∇φ
    Delta(Box<Formula>),
    /// ∘φ := ¬•φ
    Circ(Box<Formula>),
    /// ◇φ := ¬□¬φ
    Diamond(Box<Formula>),
}

/// Returns true if `name` is a legal atom name (`[a-z][a-z0-9_]*`, not a keyword).
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_') && !parse::is_keyword(name)
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn meta(name: impl Into<String>) -> Self {
        Formula::Meta(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn nabla(f: Formula) -> Self {
        Formula::Nabla(Box::new(f))
    }

    pub fn bullet(f: Formula) -> Self {
        Formula::Bullet(Box::new(f))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    pub fn delta(f: Formula) -> Self {
        Formula::Delta(Box::new(f))
    }

    pub fn circ(f: Formula) -> Self {
        Formula::Circ(Box::new(f))
    }

    pub fn diamond(f: Formula) -> Self {
        Formula::Diamond(Box::new(f))
    }

    /// Names of the atoms occurring in the formula. Metavariables are not atoms.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(a) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    /// Names of the metavariables occurring in the formula.
    pub fn metavars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Meta(a) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    /// Every propositional letter the formula depends on: atoms and
    /// metavariables, the latter spelled with their `?` prefix.
    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Meta(m) => {
                out.insert(format!("?{m}"));
            }
            _ => {}
        });
        out
    }

    /// Maximum nesting depth of modal operators (defined duals included).
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Top | Formula::Bot => 0,
            Formula::Not(a) => a.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Nabla(a)
            | Formula::Bullet(a)
            | Formula::Box(a)
            | Formula::Delta(a)
            | Formula::Circ(a)
            | Formula::Diamond(a) => 1 + a.modal_depth(),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Rewrites Δ, ∘ and ◇ into their definitions, bottom-up.
    pub fn expand_defined(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Top | Formula::Bot => self.clone(),
            Formula::Not(a) => Formula::not(a.expand_defined()),
            Formula::And(a, b) => Formula::and(a.expand_defined(), b.expand_defined()),
            Formula::Or(a, b) => Formula::or(a.expand_defined(), b.expand_defined()),
            Formula::Imp(a, b) => Formula::imp(a.expand_defined(), b.expand_defined()),
            Formula::Iff(a, b) => Formula::iff(a.expand_defined(), b.expand_defined()),
            Formula::Nabla(a) => Formula::nabla(a.expand_defined()),
            Formula::Bullet(a) => Formula::bullet(a.expand_defined()),
            Formula::Box(a) => Formula::boxed(a.expand_defined()),
            Formula::Delta(a) => Formula::not(Formula::nabla(a.expand_defined())),
            Formula::Circ(a) => Formula::not(Formula::bullet(a.expand_defined())),
            Formula::Diamond(a) => Formula::not(Formula::boxed(Formula::not(a.expand_defined()))),
        }
    }

    /// True if no Δ, ∘ or ◇ node occurs.
    pub fn is_primitive(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::Delta(_) | Formula::Circ(_) | Formula::Diamond(_)) {
                ok = false;
            }
        });
        ok
    }

    /// Replaces every metavariable `?x` with `map(x)`; unmapped ones are kept.
    pub fn substitute_meta<F>(&self, map: &F) -> Formula
    where
        F: Fn(&str) -> Option<Formula>,
    {
        self.map_leaves(&|f| match f {
            Formula::Meta(m) => map(m),
            _ => None,
        })
    }

    /// Replaces every atom `a` with `map(a)`; unmapped ones are kept.
    pub fn substitute_atoms<F>(&self, map: &F) -> Formula
    where
        F: Fn(&str) -> Option<Formula>,
    {
        self.map_leaves(&|f| match f {
            Formula::Atom(a) => map(a),
            _ => None,
        })
    }

    fn map_leaves<F>(&self, leaf: &F) -> Formula
    where
        F: Fn(&Formula) -> Option<Formula>,
    {
        let rec = |a: &Formula| a.map_leaves(leaf);
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Top | Formula::Bot => {
                leaf(self).unwrap_or_else(|| self.clone())
            }
            Formula::Not(a) => Formula::not(rec(a)),
            Formula::And(a, b) => Formula::and(rec(a), rec(b)),
            Formula::Or(a, b) => Formula::or(rec(a), rec(b)),
            Formula::Imp(a, b) => Formula::imp(rec(a), rec(b)),
            Formula::Iff(a, b) => Formula::iff(rec(a), rec(b)),
            Formula::Nabla(a) => Formula::nabla(rec(a)),
            Formula::Bullet(a) => Formula::bullet(rec(a)),
            Formula::Box(a) => Formula::boxed(rec(a)),
            Formula::Delta(a) => Formula::delta(rec(a)),
            Formula::Circ(a) => Formula::circ(rec(a)),
            Formula::Diamond(a) => Formula::diamond(rec(a)),
        }
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Top | Formula::Bot => {}
            Formula::Not(a)
            | Formula::Nabla(a)
            | Formula::Bullet(a)
            | Formula::Box(a)
            | Formula::Delta(a)
            | Formula::Circ(a)
            | Formula::Diamond(a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// The modalities used by the formula once defined operators are expanded.
    pub fn modalities(&self) -> BTreeSet<Modality> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Nabla(_) | Formula::Delta(_) => {
                out.insert(Modality::Nabla);
            }
            Formula::Bullet(_) | Formula::Circ(_) => {
                out.insert(Modality::Bullet);
            }
            Formula::Box(_) | Formula::Diamond(_) => {
                out.insert(Modality::Box);
            }
            _ => {}
        });
        out
    }

    /// ASCII concrete syntax with minimal parentheses.
    pub fn render(&self) -> String {
        render::render(self, render::Style::Ascii)
    }

    /// Unicode concrete syntax (∇ • □ ¬ ∧ ∨ → ↔).
    pub fn render_unicode(&self) -> String {
        render::render(self, render::Style::Unicode)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            f.write_str(&self.render_unicode())
        } else {
            f.write_str(&self.render())
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// One of the three primitive modalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modality {
    Nabla,
    Bullet,
    Box,
}

/// A sublanguage, given by the modalities it may use. The empty fragment is
/// plain propositional logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fragment {
    pub nabla: bool,
    pub bullet: bool,
    pub boxed: bool,
}

impl Fragment {
    pub const PROPOSITIONAL: Fragment = Fragment { nabla: false, bullet: false, boxed: false };
    pub const NABLA: Fragment = Fragment { nabla: true, bullet: false, boxed: false };
    pub const BULLET: Fragment = Fragment { nabla: false, bullet: true, boxed: false };
    pub const NABLA_BULLET: Fragment = Fragment { nabla: true, bullet: true, boxed: false };
    pub const BOX: Fragment = Fragment { nabla: false, bullet: false, boxed: true };

    pub fn allows(&self, m: Modality) -> bool {
        match m {
            Modality::Nabla => self.nabla,
            Modality::Bullet => self.bullet,
            Modality::Box => self.boxed,
        }
    }

    /// True if every modality in `f` belongs to the fragment.
    pub fn contains(&self, f: &Formula) -> bool {
        f.modalities().into_iter().all(|m| self.allows(m))
    }

    /// Command-line name: `nabla`, `bullet`, `nabla-bullet`, `box`, ...
    pub fn name(&self) -> String {
        let mut parts = Vec::new();
        if self.nabla {
            parts.push("nabla");
        }
        if self.bullet {
            parts.push("bullet");
        }
        if self.boxed {
            parts.push("box");
        }
        if parts.is_empty() {
            "prop".to_string()
        } else {
            parts.join("-")
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl std::str::FromStr for Fragment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut frag = Fragment::PROPOSITIONAL;
        if s == "prop" {
            return Ok(frag);
        }
        for part in s.split(['-', ',']) {
            match part.trim() {
                "nabla" | "∇" => frag.nabla = true,
                "bullet" | "•" => frag.bullet = true,
                "box" | "□" => frag.boxed = true,
                other => return Err(format!("unknown modality `{other}` in fragment `{s}`")),
            }
        }
        Ok(frag)
    }
}

impl Serialize for Fragment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}
