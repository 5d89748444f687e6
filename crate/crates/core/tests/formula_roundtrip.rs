use nbhd::formula::{parse, Formula};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        prop::sample::select(vec!["p", "q", "r", "p1", "long_name"]).prop_map(Formula::atom),
        prop::sample::select(vec!["phi", "psi"]).prop_map(Formula::meta),
        Just(Formula::Top),
        Just(Formula::Bot),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::nabla),
            inner.clone().prop_map(Formula::bullet),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::delta),
            inner.clone().prop_map(Formula::circ),
            inner.clone().prop_map(Formula::diamond),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn ascii_round_trip(f in formula()) {
        prop_assert_eq!(parse(&f.render()).unwrap(), f.expand_defined());
    }

    #[test]
    fn unicode_round_trip(f in formula()) {
        prop_assert_eq!(parse(&f.render_unicode()).unwrap(), f.expand_defined());
    }

    #[test]
    fn rendering_is_stable(f in formula()) {
        let g = parse(&f.render()).unwrap();
        prop_assert_eq!(parse(&g.render()).unwrap(), g);
    }
}

fn p(s: &str) -> Formula {
    parse(s).unwrap()
}

#[test]
fn precedence_and_associativity() {
    let (a, b, c) = (Formula::atom("p"), Formula::atom("q"), Formula::atom("r"));
    assert_eq!(p("p & q | r"), Formula::or(Formula::and(a.clone(), b.clone()), c.clone()));
    assert_eq!(p("p | q & r"), Formula::or(a.clone(), Formula::and(b.clone(), c.clone())));
    assert_eq!(p("p -> q -> r"), Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone())));
    assert_eq!(p("p <-> q -> r"), Formula::iff(a.clone(), Formula::imp(b.clone(), c.clone())));
    assert_eq!(p("p & q & r"), Formula::and(Formula::and(a.clone(), b.clone()), c.clone()));
    assert_eq!(p("~nabla p & q"), Formula::and(Formula::not(Formula::nabla(a.clone())), b.clone()));
    assert_eq!(p("bullet p -> p"), Formula::imp(Formula::bullet(a.clone()), a.clone()));
    assert_eq!(p("∇p ∧ •¬q → □r"), p("nabla p & bullet ~q -> box r"));
}

#[test]
fn minimal_parentheses() {
    for s in ["p & q | r", "(p | q) & r", "p -> q -> r", "(p -> q) -> r", "~(p & q)", "nabla (p | q)", "p & (q & r)"] {
        assert_eq!(p(s).render(), s);
    }
}

#[test]
fn errors_carry_positions() {
    let e = parse("p &\n  & q").unwrap_err();
    assert_eq!((e.line, e.column), (2, 3));
    assert!(parse("nabla").is_err());
    assert!(parse("(p").is_err());
    assert!(parse("p q").is_err());
}
