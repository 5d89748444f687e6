//! Canonical enumeration of small frames.
//!
//! A frame on `n ≤ 4` states is numbered by writing each neighborhood as a
//! `2^n`-bit membership word and concatenating the words, state 0 most
//! significant. Index order is the canonical frame order.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SearchError;
use crate::model::{Frame, PropertySet, SetFamily};

const NAMES: [&str; 4] = ["s", "t", "u", "v"];

/// Labels for enumerated frames: `s t u v`, then `s4 s5 ...`.
pub fn state_labels(n: usize) -> Arc<[String]> {
    (0..n).map(|i| NAMES.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("s{i}"))).collect()
}

/// Number of frames on `n` states: `2^(n·2^n)`.
pub fn frame_count(n: usize) -> u128 {
    1u128 << (n << n)
}

pub fn frame_from_index(n: usize, idx: u64, labels: &Arc<[String]>) -> Frame {
    debug_assert!(n <= 4);
    let width = 1usize << n;
    let nbhd = (0..n)
        .map(|s| {
            let shift = (n - 1 - s) * width;
            let word = if shift >= 64 { 0 } else { idx >> shift };
            SetFamily::from_bits(n, word)
        })
        .collect();
    Frame::from_families(labels.clone(), nbhd)
}

/// Inverse of [`frame_from_index`], for frames of at most 4 states.
pub fn frame_index(fr: &Frame) -> Option<u64> {
    let n = fr.size();
    if n > 4 {
        return None;
    }
    let width = 1usize << n;
    Some(fr.neighborhoods().iter().fold(
        0u64,
        |acc, fam| {
            if width == 64 {
                fam.bits()
            } else {
                acc << width | fam.bits()
            }
        },
    ))
}

pub fn in_class(fr: &Frame, props: &PropertySet) -> bool {
    props.iter().all(|p| fr.has_property(*p))
}

/// Every frame on exactly `n` states with all of `props`, in canonical order.
pub fn enumerate_frames(n: usize, props: &PropertySet) -> Result<impl Iterator<Item = Frame>, SearchError> {
    if n == 0 {
        return Err(SearchError::NoStates);
    }
    if n > 3 {
        return Err(SearchError::NotExhaustive(n));
    }
    let labels = state_labels(n);
    let props = props.clone();
    let total = frame_count(n) as u64;
    Ok((0..total).map(move |idx| frame_from_index(n, idx, &labels)).filter(move |fr| in_class(fr, &props)))
}

/// `samples` frames on `n ≤ 4` states drawn uniformly with the given seed,
/// keeping those with all of `props`.
pub fn sample_frames(n: usize, props: &PropertySet, samples: u64, seed: u64) -> Result<Vec<Frame>, SearchError> {
    if n == 0 {
        return Err(SearchError::NoStates);
    }
    if n > 4 {
        return Err(SearchError::TooManyStates(n));
    }
    let labels = state_labels(n);
    let bits = n << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..samples)
        .map(|_| {
            let idx = if bits >= 64 { rng.gen() } else { rng.gen_range(0..1u64 << bits) };
            frame_from_index(n, idx, &labels)
        })
        .filter(|fr| in_class(fr, props))
        .collect())
}
