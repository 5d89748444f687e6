mod common;

use common::{read, Naive};
use nbhd::formula::parse;
use nbhd::model::{Document, ModelFile};
use nbhd::replication::{export_fixture, fixture, fixture_ids};

fn file_name(id: &str) -> String {
    format!("fixtures/{}.json", id.to_lowercase().replace('.', "_").replace('\'', "_prime"))
}

#[test]
fn files_on_disk_round_trip_byte_identically() {
    let ids = fixture_ids();
    assert_eq!(ids.len(), 23);
    for id in ids {
        let text = read(&file_name(id));
        assert_eq!(export_fixture(id).unwrap(), text, "{id}");
        assert_eq!(Document::parse(&text).unwrap().to_json(), text, "{id}");
    }
}

#[test]
fn documented_examples() {
    let p1 = fixture("P1.M").unwrap();
    let mf: ModelFile = serde_json::from_str(p1.source).unwrap();
    assert_eq!(mf.states, ["s", "t"]);
    assert_eq!(mf.neighborhoods["s"], [vec!["t"], vec!["s", "t"]]);
    assert!(mf.neighborhoods["t"].is_empty());
    assert_eq!(mf.valuation.unwrap()["p"], ["s"]);

    let p12: ModelFile = serde_json::from_str(&export_fixture("P12.M′").unwrap()).unwrap();
    let mut got = p12.neighborhoods["s'"].clone();
    got.sort();
    assert_eq!(got, [vec!["s'"], vec!["s'", "t'"]]);
    let mut got = p12.neighborhoods["t'"].clone();
    got.sort();
    assert_eq!(got, [vec![], vec!["s'"], vec!["s'", "t'"], vec!["t'"]]);
}

/// Truth values quoted in the text, recomputed with the reference evaluator.
#[test]
fn quoted_truth_values() {
    let cases = [
        ("P1.M", "s", "bullet p", true),
        ("P1.M'", "s'", "bullet p", false),
        ("P3.M", "s", "bullet ~p", true),
        ("P3.M'", "s'", "bullet ~p", false),
        ("P6.M", "s", "nabla p", true),
        ("P6.M'", "s'", "nabla p", false),
        ("P12.M", "s", "box p", true),
        ("P12.M'", "s'", "box p", false),
        ("R1.M", "s", "box false", true),
        ("R1.M'", "s'", "box false", false),
    ];
    for (id, state, f, want) in cases {
        let fx = fixture(id).unwrap();
        let naive = Naive::from_file(&serde_json::from_str(fx.source).unwrap());
        let s = naive.states.iter().position(|x| x == state).unwrap();
        assert_eq!(naive.holds(s, &parse(f).unwrap()), want, "{id} {f}");
    }
}
