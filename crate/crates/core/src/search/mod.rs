//! Frame enumeration, bounded countermodel search, fragment
//! distinguishability and •-morphisms.

mod distinguish;
mod enumerate;
mod morphism;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::formula::Formula;
use crate::model::{Model, PropertySet};
use crate::semantics::{ground, Coverage, CoverageMode, Program};

pub use distinguish::{default_vocab, definable_pairs, distinguishable, DefinablePair, Pool, Step, Witness};
pub use enumerate::{
    enumerate_frames, frame_count, frame_from_index, frame_index, in_class, sample_frames, state_labels,
};
pub use morphism::{check_bullet_morphism, parse_map, MorphismFailure};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x6e62_6864;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("at most 4 states can be searched, {0} requested")]
    TooManyStates(usize),
    #[error("exhaustive search needs at most 3 states, {0} requested")]
    NotExhaustive(usize),
    #[error("search needs at least one state")]
    NoStates,
    #[error("search would visit {needed} frames, above the budget of {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest state count searched (1 to 4).
    pub max_states: usize,
    /// Ceiling on the number of frames enumerated exhaustively.
    pub frame_budget: u64,
    /// Frames drawn per sampled size.
    pub samples: u64,
    pub seed: u64,
    /// Worker threads, or 0 for the current pool; results do not depend on this.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_states: 2,
            frame_budget: (1 << 24) + (1 << 10),
            samples: 20_000,
            seed: DEFAULT_SEED,
            jobs: 1,
        }
    }
}

/// Whether frames of `n` states are searched exhaustively for a formula with `letters` letters.
pub fn exhaustive_at(n: usize, letters: usize) -> bool {
    n <= 2 || (n == 3 && letters < 3)
}

/// Runs `op` on a pool of `jobs` threads; `0` runs it on the current pool.
pub fn with_jobs<T: Send>(jobs: usize, op: impl FnOnce() -> T + Send) -> Result<T, SearchError> {
    if jobs == 0 {
        return Ok(op());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    Ok(pool.install(op))
}

/// A countermodel search result.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// The least falsifying pointed model, with the state label.
    pub witness: Option<(Model, String)>,
    pub coverage: Vec<Coverage>,
}

/// The canonically least pointed model in the class falsifying `f`, if any.
pub fn find_countermodel(
    f: &Formula,
    props: &PropertySet,
    opts: &SearchOptions,
) -> Result<Option<(Model, String)>, SearchError> {
    Ok(search_countermodel(f, props, opts)?.witness)
}

/// Searches sizes `1..=max_states` in order. Exhaustive sizes are scanned in
/// (frame index, valuation index, state) order; sampled sizes in draw order.
pub fn search_countermodel(
    f: &Formula,
    props: &PropertySet,
    opts: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    if opts.max_states == 0 {
        return Err(SearchError::NoStates);
    }
    if opts.max_states > 4 {
        return Err(SearchError::TooManyStates(opts.max_states));
    }
    let prog = Program::compile(&ground(f));
    let k = prog.letters().len();
    let needed: u128 = (1..=opts.max_states).filter(|&n| exhaustive_at(n, k)).map(frame_count).sum();
    if needed > opts.frame_budget as u128 {
        return Err(SearchError::Budget { needed, budget: opts.frame_budget });
    }
    with_jobs(opts.jobs, || {
        let mut coverage = Vec::new();
        for n in 1..=opts.max_states {
            let labels = state_labels(n);
            let (hit, cov) = if exhaustive_at(n, k) {
                let total = frame_count(n) as u64;
                let hit = (0..total).into_par_iter().find_map_first(|idx| {
                    let fr = frame_from_index(n, idx, &labels);
                    if !in_class(&fr, props) {
                        return None;
                    }
                    prog.first_counterexample(&fr).map(|(v, s)| (fr, v, s))
                });
                let upto = hit.as_ref().map(|(fr, _, _)| frame_index(fr).expect("small frame") + 1).unwrap_or(total);
                let checked = (0..upto)
                    .into_par_iter()
                    .filter(|&idx| in_class(&frame_from_index(n, idx, &labels), props))
                    .count() as u64;
                (hit, Coverage { states: n, mode: CoverageMode::Exhaustive, frames_checked: checked })
            } else {
                let seed = opts.seed;
                let draws = draw_samples(n, k, opts.samples, seed);
                let members: Vec<bool> =
                    draws.par_iter().map(|d| in_class(&frame_from_index(n, d.frame, &labels), props)).collect();
                let hit = draws.par_iter().zip(members.par_iter()).find_map_first(|(d, &member)| {
                    if !member {
                        return None;
                    }
                    let fr = frame_from_index(n, d.frame, &labels);
                    let found = match d.valuation {
                        None => prog.first_counterexample(&fr),
                        Some(v) => {
                            let t = prog.eval(&fr, &prog.valuation(n, v));
                            (t != fr.full()).then(|| (v, t.complement(n).iter().next().unwrap()))
                        }
                    };
                    found.map(|(v, s)| (fr, v, s))
                });
                let checked = members.iter().filter(|m| **m).count() as u64;
                let mode = CoverageMode::Sampled { samples: opts.samples, seed };
                (hit, Coverage { states: n, mode, frames_checked: checked })
            };
            coverage.push(cov);
            if let Some((fr, v, s)) = hit {
                let label = fr.label(s).to_string();
                return SearchOutcome { witness: Some((prog.model(&fr, v), label)), coverage };
            }
        }
        SearchOutcome { witness: None, coverage }
    })
}

/// Outcome of comparing frame validity of a formula with a frame property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefinabilityScan {
    pub formula: Formula,
    pub property: String,
    pub states: usize,
    pub mode: CoverageMode,
    pub frames: u64,
    pub violations: u64,
    /// Canonical index of the first frame where validity and the property disagree.
    pub first_violation: Option<u64>,
}

impl DefinabilityScan {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `frame ⊨ f  ⟺  frame has all of props` over the frames with `n`
/// states: all of them if `samples` is `None`, otherwise that many seeded draws.
pub fn scan_definability(
    f: &Formula,
    props: &PropertySet,
    n: usize,
    samples: Option<u64>,
    seed: u64,
    jobs: usize,
) -> Result<DefinabilityScan, SearchError> {
    if n == 0 {
        return Err(SearchError::NoStates);
    }
    if n > 4 {
        return Err(SearchError::TooManyStates(n));
    }
    if samples.is_none() && n > 3 {
        return Err(SearchError::NotExhaustive(n));
    }
    let prog = Program::compile(&ground(f));
    if prog.letters().len() * n > crate::semantics::VALUATION_BUDGET {
        return Err(SearchError::Budget { needed: 1u128 << (prog.letters().len() * n), budget: 1 << 24 });
    }
    let labels = state_labels(n);
    let disagrees = |idx: u64| {
        let fr = frame_from_index(n, idx, &labels);
        prog.first_counterexample(&fr).is_none() != in_class(&fr, props)
    };
    with_jobs(jobs, || {
        let (frames, mode, bad): (u64, CoverageMode, Vec<u64>) = match samples {
            None => {
                let total = frame_count(n) as u64;
                let bad = (0..total).into_par_iter().filter(|&i| disagrees(i)).collect();
                (total, CoverageMode::Exhaustive, bad)
            }
            Some(k) => {
                let draws: Vec<u64> = draw_samples(n, 0, k, seed).into_iter().map(|d| d.frame).collect();
                let bad = draws.par_iter().copied().filter(|&i| disagrees(i)).collect();
                (k, CoverageMode::Sampled { samples: k, seed }, bad)
            }
        };
        DefinabilityScan {
            formula: f.clone(),
            property: crate::model::class_name(props),
            states: n,
            mode,
            frames,
            violations: bad.len() as u64,
            first_violation: bad.first().copied(),
        }
    })
}

struct Draw {
    frame: u64,
    /// `None` means every valuation is tried.
    valuation: Option<u64>,
}

/// Largest `letters · |S|` for which a sampled frame is checked under every valuation.
const SAMPLED_ALL_VALUATIONS: usize = 8;

fn draw_samples(n: usize, letters: usize, samples: u64, seed: u64) -> Vec<Draw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 56);
    let frame_bits = n << n;
    let val_bits = letters * n;
    (0..samples)
        .map(|_| {
            let frame = if frame_bits >= 64 { rng.gen() } else { rng.gen_range(0..1u64 << frame_bits) };
            let valuation = (val_bits > SAMPLED_ALL_VALUATIONS).then(|| rng.gen_range(0..1u64 << val_bits));
            Draw { frame, valuation }
        })
        .collect()
}
