mod common;

use std::io::Write;

use common::{cli, crate_path, read};
use nbhd::model::Document;

fn fx(name: &str) -> String {
    crate_path(&format!("fixtures/{name}.json")).display().to_string()
}

fn script(name: &str) -> String {
    crate_path(&format!("scripts/{name}.prf")).display().to_string()
}

fn temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn exit_code_matrix() {
    let formula_file = temp("nabla p <-> nabla ~p\n");
    let broken = temp(&read("scripts/bullet_elim.prf").replace("CONSEQ 3,4", "CONSEQ 3"));
    let (p1m, p1m2, p6m, p6m2) = (fx("p1_m"), fx("p1_m_prime"), fx("p6_m"), fx("p6_m_prime"));
    let ff = formula_file.path().display().to_string();
    let bad_script = broken.path().display().to_string();
    let good_script = script("nabla_truth_bullet");

    // (arguments, expected exit code, expected stdout fragment)
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["check", "--model", &p1m, "--state", "s", "--formula", "bullet p"], 0, "true"),
        (vec!["check", "--model", &p1m2, "--state", "s'", "--formula", "bullet p"], 1, "false"),
        (vec!["check", "--model", &p1m, "--formula-file", &ff], 0, "true"),
        (vec!["check", "--model", &p1m, "--state", "zz", "--formula", "p"], 2, ""),
        (vec!["props", "--model", &p6m, "--class", "n,r,i,s,d,b"], 0, "(b) yes"),
        (vec!["props", "--model", &p1m, "--class", "n"], 1, "(n) no"),
        (vec!["valid", "--formula", "bullet p -> nabla p", "--class", "all", "--max-states", "2"], 1, "countermodel"),
        (vec!["valid", "--formula", "bullet p -> p", "--class", "all"], 0, "valid up to bound"),
        (vec!["valid", "--formula", "nabla p <-> bullet p | bullet ~p", "--class", "c"], 0, "valid up to bound"),
        (vec!["valid", "--formula", "p", "--max-states", "5"], 2, ""),
        (
            vec![
                "distinguish",
                "--model",
                &p6m,
                "--state",
                "s",
                "--model2",
                &p6m2,
                "--state2",
                "s'",
                "--fragment",
                "bullet",
            ],
            0,
            "indistinguishable",
        ),
        (
            vec![
                "distinguish",
                "--model",
                &p6m,
                "--state",
                "s",
                "--model2",
                &p6m2,
                "--state2",
                "s'",
                "--fragment",
                "nabla",
            ],
            1,
            "distinguishable by",
        ),
        (vec!["morphism", "--model", &p6m, "--model2", &p6m2, "--map", "s=s',t=t'"], 0, "bullet-morphism"),
        (vec!["morphism", "--model", &p6m, "--model2", &p6m2, "--map", "s=t',t=s'"], 1, "not a bullet-morphism"),
        (vec!["prove", "--script", &good_script, "--system", "E"], 0, "accepted"),
        (vec!["prove", "--script", &bad_script, "--system", "E"], 1, "rejected at line 5"),
        (vec!["prove", "--script", &good_script, "--system", "S5"], 2, ""),
        (vec!["export-fixture", "P12.M'"], 0, "\"t'\""),
        (vec!["export-fixture", "P99.M"], 2, ""),
        (vec!["replicate", "--quick", "--no-timings"], 0, "0 failed"),
    ];
    assert_eq!(cases.len(), 20);
    for (args, code, fragment) in cases {
        let (got, out, err) = cli(&args);
        assert_eq!(got, code, "{args:?}\nstdout: {out}\nstderr: {err}");
        assert!(out.contains(fragment), "{args:?}: {out}");
        if code == 2 {
            assert!(!err.is_empty(), "{args:?} printed no error");
        }
    }
}

#[test]
fn export_reimports_byte_identically() {
    for id in nbhd::replication::fixture_ids() {
        let (code, out, _) = cli(&["export-fixture", id]);
        assert_eq!(code, 0);
        let file = temp(&out);
        let again = std::fs::read_to_string(file.path()).unwrap();
        assert_eq!(Document::parse(&again).unwrap().to_json(), out, "{id}");
    }
}

#[test]
fn supplement_makes_monotone() {
    let (code, out, _) = cli(&["supplement", "--model", &fx("p1_m")]);
    assert_eq!(code, 0);
    let doc = Document::parse(&out).unwrap();
    assert!(doc.frame().has_property(nbhd::model::Property::S));
    let f = temp(&out);
    let (code, _, _) = cli(&["props", "--model", &f.path().display().to_string(), "--class", "s"]);
    assert_eq!(code, 0);
}

#[test]
fn json_outputs_parse() {
    let p6m = fx("p6_m");
    let runs: [Vec<&str>; 4] = [
        vec!["check", "--model", &p6m, "--state", "s", "--formula", "nabla p", "--json"],
        vec!["props", "--model", &p6m, "--json"],
        vec!["valid", "--formula", "bullet p -> nabla p", "--json"],
        vec!["prove", "--soundness", "--system", "M", "--json"],
    ];
    for args in runs {
        let (_, out, _) = cli(&args);
        serde_json::from_str::<serde_json::Value>(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    }
}

#[test]
fn usage_goes_to_stderr() {
    let (code, out, err) = cli(&[]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("Usage"));
}
