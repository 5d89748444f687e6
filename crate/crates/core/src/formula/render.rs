//! Printer emitting the fewest parentheses the parser needs.

use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Style {
    Ascii,
    Unicode,
}

// Binding strength, tightest highest.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

pub(super) fn render(f: &Formula, style: Style) -> String {
    let mut out = String::new();
    go(f, style, &mut out);
    out
}

fn child(f: &Formula, needs_parens: bool, style: Style, out: &mut String) {
    if needs_parens {
        out.push('(');
        go(f, style, out);
        out.push(')');
    } else {
        go(f, style, out);
    }
}

fn go(f: &Formula, style: Style, out: &mut String) {
    let uni = style == Style::Unicode;
    let prefix = |ascii: &'static str, unicode: &'static str| if uni { unicode } else { ascii };
    match f {
        Formula::Atom(a) => out.push_str(a),
        Formula::Meta(m) => {
            out.push('?');
            out.push_str(m);
        }
        Formula::Top => out.push_str(prefix("true", "⊤")),
        Formula::Bot => out.push_str(prefix("false", "⊥")),
        Formula::Not(a) => unary(prefix("~", "¬"), a, style, out),
        Formula::Nabla(a) => unary(prefix("nabla ", "∇"), a, style, out),
        Formula::Bullet(a) => unary(prefix("bullet ", "•"), a, style, out),
        Formula::Box(a) => unary(prefix("box ", "□"), a, style, out),
        Formula::Delta(a) => unary(prefix("delta ", "Δ"), a, style, out),
        Formula::Circ(a) => unary(prefix("circ ", "∘"), a, style, out),
        Formula::Diamond(a) => unary(prefix("diamond ", "◇"), a, style, out),
        Formula::And(a, b) => left_assoc(AND, prefix(" & ", " ∧ "), a, b, style, out),
        Formula::Or(a, b) => left_assoc(OR, prefix(" | ", " ∨ "), a, b, style, out),
        Formula::Imp(a, b) => right_assoc(IMP, prefix(" -> ", " → "), a, b, style, out),
        Formula::Iff(a, b) => right_assoc(IFF, prefix(" <-> ", " ↔ "), a, b, style, out),
    }
}

fn unary(op: &str, a: &Formula, style: Style, out: &mut String) {
    out.push_str(op);
    child(a, prec(a) < UNARY, style, out);
}

fn left_assoc(p: u8, op: &str, a: &Formula, b: &Formula, style: Style, out: &mut String) {
    child(a, prec(a) < p, style, out);
    out.push_str(op);
    child(b, prec(b) <= p, style, out);
}

fn right_assoc(p: u8, op: &str, a: &Formula, b: &Formula, style: Style, out: &mut String) {
    child(a, prec(a) <= p, style, out);
    out.push_str(op);
    child(b, prec(b) < p, style, out);
}

#[cfg(test)]
mod tests {
    use crate::formula::parse;

    fn rt(s: &str) -> String {
        parse(s).unwrap().render()
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(rt("(p & q) & r"), "p & q & r");
        assert_eq!(rt("p & (q & r)"), "p & (q & r)");
        assert_eq!(rt("(p -> q) -> r"), "(p -> q) -> r");
        assert_eq!(rt("p -> (q -> r)"), "p -> q -> r");
        assert_eq!(rt("((p | q))"), "p | q");
        assert_eq!(rt("~(p & q)"), "~(p & q)");
        assert_eq!(rt("nabla (~p)"), "nabla ~p");
        assert_eq!(rt("(nabla p) & (bullet q)"), "nabla p & bullet q");
        assert_eq!(rt("(p <-> q) -> r"), "(p <-> q) -> r");
    }

    #[test]
    fn unicode_rendering() {
        let f = parse("bullet nabla p -> ~box false").unwrap();
        assert_eq!(f.render_unicode(), "•∇p → ¬□⊥");
        assert_eq!(parse(&f.render_unicode()).unwrap(), f);
    }
}
