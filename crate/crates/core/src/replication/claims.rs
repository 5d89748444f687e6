//! Claims about the fixtures and how each one is checked.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::formula::{parse, Formula, Fragment};
use crate::model::{class_name, Frame, Model, Property, PropertySet, StateSet};
use crate::search::{
    check_bullet_morphism, distinguishable, parse_map, scan_definability, SearchOptions, DEFAULT_SEED,
};
use crate::semantics::{class_valid, frame_valid, satisfies};

use super::fixtures::fixture;
use super::ReplicationError;

/// A pointed fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Point {
    pub fixture: String,
    pub state: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimKind {
    HasProperty {
        fixture: String,
        property: Property,
    },
    LacksProperty {
        fixture: String,
        property: Property,
    },
    Satisfies {
        point: Point,
        formula: Formula,
    },
    Falsifies {
        point: Point,
        formula: Formula,
    },
    /// No formula of the fragment over `{p}` separates the points.
    Indistinguishable {
        left: Point,
        right: Point,
        fragment: Fragment,
    },
    /// `witness` is in the fragment and separates the points, and the
    /// engine finds a separating formula on its own.
    Distinguishable {
        left: Point,
        right: Point,
        fragment: Fragment,
        witness: Formula,
    },
    FrameValid {
        fixture: String,
        formula: Formula,
    },
    FrameInvalid {
        fixture: String,
        formula: Formula,
    },
    /// For every pair of valuations over `vocab` that agree on each listed
    /// pair of states, those states are L(∇,•)-indistinguishable.
    PointwiseIndistinguishable {
        left: String,
        right: String,
        pairs: Vec<(String, String)>,
        vocab: Vec<String>,
    },
    BulletMorphism {
        left: String,
        right: String,
        map: String,
        holds: bool,
    },
    /// Frame validity of `formula` coincides with `property` on frames of
    /// `states` states; `samples` switches to seeded sampling.
    Definability {
        formula: Formula,
        property: Property,
        states: usize,
        samples: Option<u64>,
    },
    ClassValid {
        formula: Formula,
        class: String,
        bound: usize,
    },
    ClassRefuted {
        formula: Formula,
        class: String,
        bound: usize,
    },
    /// One row of the expressivity table: both points lie in the class,
    /// are indistinguishable in `weaker` and separated by `witness` in `stronger`.
    Separation {
        class: String,
        weaker: Fragment,
        stronger: Fragment,
        left: Point,
        right: Point,
        witness: Formula,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub group: String,
    #[serde(flatten)]
    pub kind: ClaimKind,
}

/// What checking a claim found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub passed: bool,
    pub detail: String,
}

fn f(s: &str) -> Formula {
    parse(s).expect("catalogue formula parses")
}

fn pt(fixture: &str, state: &str) -> Point {
    Point { fixture: fixture.to_string(), state: state.to_string() }
}

fn frag_tag(fr: Fragment) -> &'static str {
    match fr {
        Fragment::NABLA => "nabla",
        Fragment::BULLET => "bullet",
        Fragment::NABLA_BULLET => "nabla-bullet",
        Fragment::BOX => "box",
        _ => "other",
    }
}

struct Builder {
    claims: Vec<Claim>,
    group: String,
}

impl Builder {
    fn group(&mut self, g: &str) {
        self.group = g.to_string();
    }

    fn push(&mut self, id: String, kind: ClaimKind) {
        self.claims.push(Claim { id, group: self.group.clone(), kind });
    }

    fn has(&mut self, fixture: &str, props: &[Property]) {
        for &p in props {
            self.push(
                format!("{fixture}/has-{}", p.name()),
                ClaimKind::HasProperty { fixture: fixture.into(), property: p },
            );
        }
    }

    fn lacks(&mut self, fixture: &str, props: &[Property]) {
        for &p in props {
            self.push(
                format!("{fixture}/lacks-{}", p.name()),
                ClaimKind::LacksProperty { fixture: fixture.into(), property: p },
            );
        }
    }

    fn sat(&mut self, fixture: &str, state: &str, formula: &str, truth: bool) {
        let formula = f(formula);
        let id = format!("{fixture}/{}-{}", if truth { "sat" } else { "unsat" }, formula.render());
        let point = pt(fixture, state);
        self.push(
            id,
            if truth { ClaimKind::Satisfies { point, formula } } else { ClaimKind::Falsifies { point, formula } },
        );
    }

    /// The standard pair `(X.M, s)` / `(X.M', s')`.
    fn indist(&mut self, g: &str, frag: Fragment) {
        let (l, r) = (format!("{g}.M"), format!("{g}.M'"));
        self.push(
            format!("{g}/indist-{}", frag_tag(frag)),
            ClaimKind::Indistinguishable { left: pt(&l, "s"), right: pt(&r, "s'"), fragment: frag },
        );
    }

    fn dist(&mut self, g: &str, frag: Fragment, witness: &str) {
        let (l, r) = (format!("{g}.M"), format!("{g}.M'"));
        self.push(
            format!("{g}/dist-{}", frag_tag(frag)),
            ClaimKind::Distinguishable { left: pt(&l, "s"), right: pt(&r, "s'"), fragment: frag, witness: f(witness) },
        );
    }

    fn pointwise(&mut self, id: &str, left: &str, right: &str, pairs: &[(&str, &str)]) {
        for vocab in [vec!["p"], vec!["p", "q"]] {
            self.push(
                format!("{id}/{}", vocab.join("")),
                ClaimKind::PointwiseIndistinguishable {
                    left: left.into(),
                    right: right.into(),
                    pairs: pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
                    vocab: vocab.iter().map(|v| v.to_string()).collect(),
                },
            );
        }
    }

    fn class_claim(&mut self, formula: &str, class: &str, valid: bool) {
        let formula = f(formula);
        let id = format!("{}/{}-{}", self.group, if valid { "valid" } else { "refuted" }, class);
        let id = format!("{id}/{}", formula.render());
        let (class, bound) = (class.to_string(), 2);
        self.push(
            id,
            if valid {
                ClaimKind::ClassValid { formula, class, bound }
            } else {
                ClaimKind::ClassRefuted { formula, class, bound }
            },
        );
    }

    fn separation(&mut self, class: &str, weaker: Fragment, stronger: Fragment, g: &str, witness: &str) {
        self.push(
            format!("MATRIX/{}-not-{}/{class}", frag_tag(stronger), frag_tag(weaker)),
            ClaimKind::Separation {
                class: class.to_string(),
                weaker,
                stronger,
                left: pt(&format!("{g}.M"), "s"),
                right: pt(&format!("{g}.M'"), "s'"),
                witness: f(witness),
            },
        );
    }
}

/// The full catalogue in report order. `quick` samples the three-state
/// definability scan instead of enumerating it.
pub fn catalogue(quick: bool) -> Vec<Claim> {
    use Property::*;
    let mut b = Builder { claims: Vec::new(), group: String::new() };

    b.group("P1");
    for m in ["P1.M", "P1.M'"] {
        b.has(m, &[R, I, S, D]);
    }
    b.lacks("P1.M", &[N]);
    b.sat("P1.M", "s", "bullet p", true);
    b.sat("P1.M'", "s'", "bullet p", false);
    b.indist("P1", Fragment::NABLA);
    b.dist("P1", Fragment::BULLET, "bullet p");

    b.group("P2");
    for m in ["P2.M", "P2.M'"] {
        b.has(m, &[N, B]);
    }
    b.sat("P2.M", "s", "bullet p", true);
    b.sat("P2.M'", "s'", "bullet p", false);
    b.indist("P2", Fragment::NABLA);
    b.dist("P2", Fragment::BULLET, "bullet p");

    b.group("P3");
    for m in ["P3.M", "P3.M'"] {
        b.has(m, &[Four, Five]);
    }
    b.sat("P3.M", "s", "bullet ~p", true);
    b.sat("P3.M'", "s'", "bullet ~p", false);
    b.indist("P3", Fragment::NABLA);
    b.dist("P3", Fragment::BULLET, "bullet ~p");

    b.group("R1");
    for m in ["R1.M", "R1.M'"] {
        b.has(m, &[R, I, Four, Five]);
    }
    b.sat("R1.M", "s", "bullet p", false);
    b.sat("R1.M'", "s'", "bullet p", false);
    b.indist("R1", Fragment::BULLET);
    b.indist("R1", Fragment::NABLA_BULLET);
    b.dist("R1", Fragment::BOX, "box false");

    b.group("P6");
    for m in ["P6.M", "P6.M'"] {
        b.has(m, &[N, R, I, S, D, B]);
    }
    b.sat("P6.M", "s", "nabla p", true);
    b.sat("P6.M'", "s'", "nabla p", false);
    b.indist("P6", Fragment::BULLET);
    b.dist("P6", Fragment::NABLA, "nabla p");
    for (map, holds) in [("s=s',t=t'", true), ("s=t',t=s'", false)] {
        b.push(
            format!("P6/bullet-morphism/{map}"),
            ClaimKind::BulletMorphism { left: "P6.M".into(), right: "P6.M'".into(), map: map.into(), holds },
        );
    }

    b.group("P7");
    for m in ["P7.M", "P7.M'"] {
        b.has(m, &[Four]);
    }
    b.indist("P7", Fragment::BULLET);
    b.dist("P7", Fragment::NABLA, "nabla p");

    b.group("P8");
    for m in ["P8.M", "P8.M'"] {
        b.has(m, &[Five]);
    }
    b.indist("P8", Fragment::BULLET);
    b.dist("P8", Fragment::NABLA, "nabla p");

    b.group("P12");
    for m in ["P12.M", "P12.M'"] {
        b.has(m, &[N, S, B]);
    }
    b.sat("P12.M", "s", "box p", true);
    b.sat("P12.M'", "s'", "box p", false);
    b.indist("P12", Fragment::NABLA_BULLET);
    b.dist("P12", Fragment::BOX, "box p");

    b.group("P13");
    let circ_top = f("circ true");
    for states in 1..=3 {
        let samples = (quick && states == 3).then_some(20_000);
        b.push(
            format!("P13/circ-true-defines-n/{states}"),
            ClaimKind::Definability { formula: circ_top.clone(), property: N, states, samples },
        );
    }
    b.push("P13/P2.M/frame-valid".into(), ClaimKind::FrameValid { fixture: "P2.M".into(), formula: circ_top.clone() });
    b.push("P13/P1.M/frame-invalid".into(), ClaimKind::FrameInvalid { fixture: "P1.M".into(), formula: circ_top });

    b.group("P14");
    b.has("P14.F1", &[D, T]);
    b.lacks("P14.F1", &[C]);
    b.has("P14.F2", &[C, R, I, B]);
    b.lacks("P14.F2", &[D, T]);
    b.lacks("P14.F3", &[R, I, B]);
    b.pointwise("P14/F1~F2", "P14.F1", "P14.F2", &[("s1", "s2")]);
    b.pointwise("P14/F2~F3@s3", "P14.F2", "P14.F3", &[("s2", "s3")]);
    b.pointwise("P14/F2~F3@t3", "P14.F2", "P14.F3", &[("s2", "t3")]);

    b.group("P15");
    b.has("P15.F", &[S, Four]);
    b.lacks("P15.F'", &[S, Four]);
    b.pointwise("P15/F~F'", "P15.F", "P15.F'", &[("s", "s'"), ("t", "t'")]);

    b.group("P16");
    b.has("P16.F", &[Five]);
    b.lacks("P16.F'", &[Five]);
    b.pointwise("P16/F~F'", "P16.F", "P16.F'", &[("s", "s'"), ("t", "t'")]);

    b.group("MATRIX");
    for class in ["all", "r", "i", "s", "d"] {
        b.separation(class, Fragment::NABLA, Fragment::BULLET, "P1", "bullet p");
    }
    for class in ["n", "b"] {
        b.separation(class, Fragment::NABLA, Fragment::BULLET, "P2", "bullet p");
    }
    for class in ["4", "5"] {
        b.separation(class, Fragment::NABLA, Fragment::BULLET, "P3", "bullet ~p");
    }
    for class in ["all", "n", "r", "i", "s", "d", "b"] {
        b.separation(class, Fragment::BULLET, Fragment::NABLA, "P6", "nabla p");
    }
    b.separation("4", Fragment::BULLET, Fragment::NABLA, "P7", "nabla p");
    b.separation("5", Fragment::BULLET, Fragment::NABLA, "P8", "nabla p");
    for class in ["all", "r", "i", "4", "5"] {
        b.separation(class, Fragment::NABLA_BULLET, Fragment::BOX, "R1", "box false");
    }
    for class in ["n", "s", "b"] {
        b.separation(class, Fragment::NABLA_BULLET, Fragment::BOX, "P12", "box p");
    }

    b.group("EQ");
    for eq in ["bullet p <-> p & nabla p", "nabla p <-> bullet p | bullet ~p"] {
        b.class_claim(eq, "c", true);
        b.class_claim(eq, "t", true);
        b.class_claim(eq, "all", false);
    }

    b.group("TH");
    b.class_claim("bullet nabla p -> nabla p", "all", true);
    b.class_claim("nabla nabla p & nabla p -> bullet nabla p", "all", true);
    b.class_claim("bullet nabla p -> nabla nabla p", "c", true);
    b.class_claim("bullet nabla p -> nabla nabla p", "all", false);

    b.claims
}

fn model_of(id: &str) -> Result<Model, ReplicationError> {
    Ok(fixture(id)?.model())
}

fn vocab_p() -> BTreeSet<String> {
    BTreeSet::from(["p".to_string()])
}

fn pass(detail: String) -> Finding {
    Finding { passed: true, detail }
}

fn fail(detail: String) -> Finding {
    Finding { passed: false, detail }
}

fn verdict(ok: bool, detail: String) -> Finding {
    Finding { passed: ok, detail }
}

fn show_set(m: &Model, x: StateSet) -> String {
    x.show(m.frame().labels())
}

fn point_models(l: &Point, r: &Point) -> Result<(Model, Model), ReplicationError> {
    Ok((model_of(&l.fixture)?, model_of(&r.fixture)?))
}

fn check_indist(l: &Point, r: &Point, frag: Fragment) -> Result<Finding, ReplicationError> {
    let (m, m2) = point_models(l, r)?;
    Ok(match distinguishable(&m, &l.state, &m2, &r.state, frag, &vocab_p())? {
        None => pass(format!("no {} formula over {{p}} separates {} from {}", frag.name(), l.state, r.state)),
        Some(w) => fail(format!("separated by {}", w.formula.render())),
    })
}

fn check_dist(l: &Point, r: &Point, frag: Fragment, witness: &Formula) -> Result<Finding, ReplicationError> {
    let (m, m2) = point_models(l, r)?;
    if !frag.contains(witness) {
        return Ok(fail(format!("{} is not in the {} fragment", witness.render(), frag.name())));
    }
    let a = satisfies(&m, &l.state, witness)?;
    let b = satisfies(&m2, &r.state, witness)?;
    if a == b {
        return Ok(fail(format!("{} is {a} at both points", witness.render())));
    }
    let found = distinguishable(&m, &l.state, &m2, &r.state, frag, &vocab_p())?;
    Ok(match found {
        Some(w) => pass(format!(
            "{} is {a} at {} and {b} at {}; engine witness {}",
            witness.render(),
            l.state,
            r.state,
            w.formula.render()
        )),
        None => fail("engine found no separating formula".into()),
    })
}

/// Every assignment of subsets of the frame to the letters.
fn valuations<'a>(fr: &'a Frame, vocab: &'a [String]) -> impl Iterator<Item = Model> + 'a {
    let n = fr.size();
    let total = 1u64 << (n * vocab.len());
    (0..total).map(move |v| {
        let val = vocab
            .iter()
            .enumerate()
            .map(|(j, a)| (a.clone(), StateSet(((v >> (j * n)) & ((1 << n) - 1)) as u32)))
            .collect();
        fr.with_valuation(val).expect("letters are valid atoms")
    })
}

fn check_pointwise(
    left: &str,
    right: &str,
    pairs: &[(String, String)],
    vocab: &[String],
) -> Result<Finding, ReplicationError> {
    let fl = fixture(left)?.frame().clone();
    let fr = fixture(right)?.frame().clone();
    let idx: Vec<(usize, usize)> = pairs
        .iter()
        .map(|(a, b)| Ok((fl.index_of(a)?, fr.index_of(b)?)))
        .collect::<Result<_, crate::model::ModelError>>()?;
    let vocab_set: BTreeSet<String> = vocab.iter().cloned().collect();
    let right_models: Vec<Model> = valuations(&fr, vocab).collect();
    let mut checked = 0u64;
    for ml in valuations(&fl, vocab) {
        for mr in &right_models {
            let agree =
                idx.iter().all(|&(a, b)| vocab.iter().all(|p| ml.value(p).contains(a) == mr.value(p).contains(b)));
            if !agree {
                continue;
            }
            checked += 1;
            for (a, b) in pairs {
                if let Some(w) = distinguishable(&ml, a, mr, b, Fragment::NABLA_BULLET, &vocab_set)? {
                    return Ok(fail(format!(
                        "{a} and {b} separated by {} under {} / {}",
                        w.formula.render(),
                        valuation_text(&ml),
                        valuation_text(mr)
                    )));
                }
            }
        }
    }
    Ok(pass(format!("{checked} agreeing valuation pairs over {{{}}}; bounded to this vocabulary", vocab.join(","))))
}

fn valuation_text(m: &Model) -> String {
    let parts: Vec<String> = m.valuation().iter().map(|(a, x)| format!("{a}={}", show_set(m, *x))).collect();
    parts.join(" ")
}

fn class_of(name: &str) -> Result<PropertySet, ReplicationError> {
    crate::model::parse_class(name).map_err(ReplicationError::Class)
}

fn check_class(formula: &Formula, class: &str, bound: usize, expect_valid: bool) -> Result<Finding, ReplicationError> {
    let props = class_of(class)?;
    let opts = SearchOptions { max_states: bound, jobs: 0, ..SearchOptions::default() };
    let v = class_valid(formula, &props, &opts)?;
    if v.is_valid_up_to_bound() {
        return Ok(verdict(expect_valid, format!("no countermodel with at most {bound} states in class {class}")));
    }
    let w = v.witness.as_ref().expect("countermodel verdicts carry a witness");
    let detail = format!("countermodel at {} with {} states", w.state, w.model.size());
    Ok(verdict(!expect_valid && v.witness_rechecks(), detail))
}

fn check_separation(
    class: &str,
    weaker: Fragment,
    stronger: Fragment,
    l: &Point,
    r: &Point,
    witness: &Formula,
) -> Result<Finding, ReplicationError> {
    let props = class_of(class)?;
    let (m, m2) = point_models(l, r)?;
    for (id, mm) in [(&l.fixture, &m), (&r.fixture, &m2)] {
        if let Some(p) = props.iter().find(|p| !mm.frame().has_property(**p)) {
            return Ok(fail(format!("{id} lacks ({})", p.name())));
        }
    }
    let weak = check_indist(l, r, weaker)?;
    if !weak.passed {
        return Ok(weak);
    }
    let strong = check_dist(l, r, stronger, witness)?;
    Ok(verdict(strong.passed, format!("{} in class {}; {}", weak.detail, class_name(&props), strong.detail)))
}

/// Runs the single check a claim stands for.
pub fn check_claim(claim: &Claim) -> Result<Finding, ReplicationError> {
    Ok(match &claim.kind {
        ClaimKind::HasProperty { fixture: id, property } | ClaimKind::LacksProperty { fixture: id, property } => {
            let want = matches!(claim.kind, ClaimKind::HasProperty { .. });
            let got = fixture(id)?.frame().has_property(*property);
            verdict(got == want, format!("{id} {} ({})", if got { "has" } else { "lacks" }, property.name()))
        }
        ClaimKind::Satisfies { point, formula } | ClaimKind::Falsifies { point, formula } => {
            let want = matches!(claim.kind, ClaimKind::Satisfies { .. });
            let got = satisfies(&model_of(&point.fixture)?, &point.state, formula)?;
            verdict(got == want, format!("{} is {got} at {}", formula.render(), point.state))
        }
        ClaimKind::Indistinguishable { left, right, fragment } => check_indist(left, right, *fragment)?,
        ClaimKind::Distinguishable { left, right, fragment, witness } => check_dist(left, right, *fragment, witness)?,
        ClaimKind::FrameValid { fixture: id, formula } | ClaimKind::FrameInvalid { fixture: id, formula } => {
            let want = matches!(claim.kind, ClaimKind::FrameValid { .. });
            let got = frame_valid(fixture(id)?.frame(), formula)?;
            verdict(
                got == want,
                format!("{} is {}valid on the frame of {id}", formula.render(), if got { "" } else { "not " }),
            )
        }
        ClaimKind::PointwiseIndistinguishable { left, right, pairs, vocab } => {
            check_pointwise(left, right, pairs, vocab)?
        }
        ClaimKind::BulletMorphism { left, right, map, holds } => {
            let (m, m2) = (model_of(left)?, model_of(right)?);
            let map_idx = parse_map(&m, &m2, map)?;
            match check_bullet_morphism(&m, &m2, &map_idx) {
                Ok(()) => verdict(*holds, format!("{map} is a bullet-morphism")),
                Err(e) => verdict(!holds, format!("{map} is not a bullet-morphism: {e}")),
            }
        }
        ClaimKind::Definability { formula, property, states, samples } => {
            let props = PropertySet::from([*property]);
            let scan = scan_definability(formula, &props, *states, *samples, DEFAULT_SEED, 0)?;
            let how = match samples {
                None => "exhaustive".to_string(),
                Some(k) => format!("{k} sampled, seed {DEFAULT_SEED}"),
            };
            verdict(
                scan.holds(),
                format!("{} frames of size {states} ({how}), {} disagreements", scan.frames, scan.violations),
            )
        }
        ClaimKind::ClassValid { formula, class, bound } => check_class(formula, class, *bound, true)?,
        ClaimKind::ClassRefuted { formula, class, bound } => check_class(formula, class, *bound, false)?,
        ClaimKind::Separation { class, weaker, stronger, left, right, witness } => {
            check_separation(class, *weaker, *stronger, left, right, witness)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let claims = catalogue(false);
        let ids: BTreeSet<&str> = claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), claims.len());
    }

    #[test]
    fn quick_only_changes_the_three_state_scan() {
        let full = catalogue(false);
        let quick = catalogue(true);
        assert_eq!(full.len(), quick.len());
        let differ: Vec<&str> = full.iter().zip(&quick).filter(|(a, b)| a != b).map(|(a, _)| a.id.as_str()).collect();
        assert_eq!(differ, vec!["P13/circ-true-defines-n/3"]);
    }

    #[test]
    fn wrong_witness_fails() {
        let c = Claim {
            id: "x".into(),
            group: "x".into(),
            kind: ClaimKind::Distinguishable {
                left: pt("P1.M", "s"),
                right: pt("P1.M'", "s'"),
                fragment: Fragment::BULLET,
                witness: f("bullet ~p"),
            },
        };
        assert!(!check_claim(&c).unwrap().passed);
    }

    #[test]
    fn pointwise_catches_a_difference() {
        let pairs = [("s".to_string(), "s'".to_string()), ("t".to_string(), "t'".to_string())];
        let out = check_pointwise("P6.M", "P6.M'", &pairs, &["p".into()]).unwrap();
        assert!(!out.passed, "{}", out.detail);
    }
}
