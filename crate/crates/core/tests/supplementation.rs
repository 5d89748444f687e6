mod common;

use common::{random_model, Naive};
use nbhd::model::Property;
use nbhd::search::{frame_count, frame_from_index, state_labels};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(fr: &nbhd::model::Frame) {
    let sup = fr.supplementation();
    assert_eq!(sup.supplementation(), sup);
    assert!(sup.has_property(Property::S));
    let (a, b) = (
        Naive::from_model(&fr.with_valuation(Default::default()).unwrap()),
        Naive::from_model(&sup.with_valuation(Default::default()).unwrap()),
    );
    for s in 0..a.size() {
        // N(s) ⊆ N⁺(s), and every member of N⁺(s) extends some member of N(s).
        assert!(a.nbhd[s].iter().all(|x| b.nbhd[s].contains(x)));
        assert!(b.nbhd[s].iter().all(|y| a.nbhd[s].iter().any(|x| x.is_subset(y))));
    }
    for p in [Property::I, Property::N] {
        if fr.has_property(p) {
            assert!(sup.has_property(p), "({}) lost", p.name());
        }
    }
}

#[test]
fn all_two_state_frames() {
    let labels = state_labels(2);
    for idx in 0..frame_count(2) as u64 {
        check(&frame_from_index(2, idx, &labels));
    }
}

#[test]
fn ten_thousand_random_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=4);
        check(random_model(&mut rng, n, &[]).frame());
    }
}
