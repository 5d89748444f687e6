mod common;

use std::collections::BTreeMap;

use common::{mutate, read, Naive, MUTATIONS, SCRIPTS};
use nbhd::formula::Formula;
use nbhd::model::StateSet;
use nbhd::proofs::{check_derivation, instantiate_pqr, parse_script, AxiomSystem, CheckOutcome, SystemName};
use nbhd::search::{frame_count, frame_from_index, state_labels};

fn check(text: &str) -> CheckOutcome {
    check_derivation(&AxiomSystem::new(SystemName::E), &parse_script(text).unwrap()).unwrap()
}

/// True at every state of every model on frames with at most two states.
fn valid_up_to_two(f: &Formula) -> bool {
    let letters: Vec<String> = f.atoms().into_iter().collect();
    (1..=2).all(|n| {
        let labels = state_labels(n);
        (0..frame_count(n) as u64).all(|idx| {
            let fr = frame_from_index(n, idx, &labels);
            (0..1u32 << (n * letters.len())).all(|v| {
                let val: BTreeMap<String, StateSet> = letters
                    .iter()
                    .enumerate()
                    .map(|(j, a)| (a.clone(), StateSet(v >> (n * j) & ((1 << n) - 1))))
                    .collect();
                let m = Naive::from_model(&fr.with_valuation(val).unwrap());
                (0..n).all(|s| m.holds(s, f))
            })
        })
    })
}

#[test]
fn shipped_scripts_are_accepted() {
    for path in SCRIPTS {
        let out = check(&read(path));
        assert!(out.is_accepted(), "{path}: {out:?}");
    }
}

#[test]
fn accepted_lines_are_valid_on_small_frames() {
    for path in SCRIPTS {
        for line in parse_script(&read(path)).unwrap().lines {
            let f = instantiate_pqr(&line.formula);
            assert!(valid_up_to_two(&f), "{path} step {}: {f}", line.number);
        }
    }
}

#[test]
fn mutations_are_rejected_at_the_mutated_step() {
    for (path, k, body) in MUTATIONS {
        let text = mutate(&read(path), k, body);
        match check(&text) {
            CheckOutcome::Rejected { line, .. } => assert_eq!(line, k, "{path}"),
            other => panic!("{path} step {k} accepted: {other:?}"),
        }
    }
}

#[test]
fn non_theorem_is_not_derivable_by_conseq() {
    let out = check("1. bullet ?phi -> ?phi ; AX E2\n2. bullet ?phi -> nabla ?phi ; CONSEQ 1\n");
    assert!(matches!(out, CheckOutcome::Rejected { line: 2, .. }));
    assert!(!valid_up_to_two(&instantiate_pqr(&nbhd::formula::parse("bullet ?phi -> nabla ?phi").unwrap())));
}
