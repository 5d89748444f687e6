//! The neighborhood properties (n), (r), (i), (s), (c), (d), (t), (b), (4),
//! (5) and the derived classes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{Frame, StateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// S ∈ N(s)
    N,
    /// ⋂N(s) ∈ N(s); vacuous when N(s) = ∅
    R,
    /// closed under binary intersection
    I,
    /// closed under supersets
    S,
    /// closed under complement
    C,
    /// X ∈ N(s) ⇒ S∖X ∉ N(s)
    D,
    /// X ∈ N(s) ⇒ s ∈ X
    T,
    B,
    Four,
    Five,
    /// (i) and (s)
    QuasiFilter,
    /// quasi-filter with (n)
    Filter,
    /// same as (s)
    Monotone,
}

/// A frame class, given as a conjunction of properties. Empty means all frames.
pub type PropertySet = BTreeSet<Property>;

impl Property {
    /// The ten primitive properties, in table order.
    pub const BASIC: [Property; 10] = [
        Property::N,
        Property::R,
        Property::I,
        Property::S,
        Property::C,
        Property::D,
        Property::T,
        Property::B,
        Property::Four,
        Property::Five,
    ];

    pub const ALL: [Property; 13] = [
        Property::N,
        Property::R,
        Property::I,
        Property::S,
        Property::C,
        Property::D,
        Property::T,
        Property::B,
        Property::Four,
        Property::Five,
        Property::QuasiFilter,
        Property::Filter,
        Property::Monotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::N => "n",
            Property::R => "r",
            Property::I => "i",
            Property::S => "s",
            Property::C => "c",
            Property::D => "d",
            Property::T => "t",
            Property::B => "b",
            Property::Four => "4",
            Property::Five => "5",
            Property::QuasiFilter => "quasi-filter",
            Property::Filter => "filter",
            Property::Monotone => "monotone",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let t = s.trim_start_matches('(').trim_end_matches(')');
        Property::ALL.into_iter().find(|p| p.name() == t).ok_or_else(|| format!("unknown property `{s}`"))
    }
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Parses a comma-separated class description such as `c,t` or `filter`.
/// `all` (or the empty string) is the unrestricted class.
pub fn parse_class(text: &str) -> Result<PropertySet, String> {
    let mut out = PropertySet::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            continue;
        }
        out.insert(part.parse()?);
    }
    Ok(out)
}

/// Renders a class for reports: `all` or `c,t`.
pub fn class_name(props: &PropertySet) -> String {
    if props.is_empty() {
        "all".to_string()
    } else {
        props.iter().map(|p| p.name()).collect::<Vec<_>>().join(",")
    }
}

pub(super) fn holds(fr: &Frame, p: Property) -> bool {
    let n = fr.size();
    let full = fr.full();
    let states = 0..n;
    match p {
        Property::N => states.into_iter().all(|s| fr.in_nbhd(s, full)),
        Property::R => states.into_iter().all(|s| fr.neighborhood(s).is_empty() || fr.in_nbhd(s, fr.core(s))),
        Property::I => states.into_iter().all(|s| {
            let fam = fr.neighborhood(s);
            fam.iter().all(|x| fam.iter().all(|y| fam.contains(x.intersection(y))))
        }),
        // Closure under adding one state at a time gives closure under supersets.
        Property::S | Property::Monotone => states.into_iter().all(|s| {
            let fam = fr.neighborhood(s);
            fam.iter().all(|x| x.complement(n).iter().all(|u| fam.contains(x.with(u))))
        }),
        Property::C => states.into_iter().all(|s| {
            let fam = fr.neighborhood(s);
            fam.iter().all(|x| fam.contains(x.complement(n)))
        }),
        Property::D => states.into_iter().all(|s| {
            let fam = fr.neighborhood(s);
            fam.iter().all(|x| !fam.contains(x.complement(n)))
        }),
        Property::T => states.into_iter().all(|s| fr.neighborhood(s).iter().all(|x| x.contains(s))),
        Property::B => {
            let images = box_images(fr);
            states.into_iter().all(|s| {
                StateSet::all(n).filter(|x| x.contains(s)).all(|x| {
                    let target = images[x.complement(n).0 as usize].complement(n);
                    fr.in_nbhd(s, target)
                })
            })
        }
        Property::Four => {
            let images = box_images(fr);
            states.into_iter().all(|s| fr.neighborhood(s).iter().all(|x| fr.in_nbhd(s, images[x.0 as usize])))
        }
        Property::Five => {
            let images = box_images(fr);
            states.into_iter().all(|s| {
                StateSet::all(n)
                    .filter(|&x| !fr.in_nbhd(s, x))
                    .all(|x| fr.in_nbhd(s, images[x.0 as usize].complement(n)))
            })
        }
        Property::QuasiFilter => holds(fr, Property::I) && holds(fr, Property::S),
        Property::Filter => holds(fr, Property::QuasiFilter) && holds(fr, Property::N),
    }
}

/// `{u : X ∈ N(u)}` for every X, indexed by bitmask.
fn box_images(fr: &Frame) -> Vec<StateSet> {
    StateSet::all(fr.size()).map(|x| fr.box_image(x)).collect()
}
