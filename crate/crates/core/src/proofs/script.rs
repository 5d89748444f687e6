//! The proof-script format.

use std::fmt;

use crate::formula::{parse, Formula};

use super::ProofError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom(String),
    Taut,
    Mp(usize, usize),
    ReNabla(usize),
    ReBullet(usize),
    Def(usize),
    Conseq(Vec<usize>),
}

impl Justification {
    /// Line numbers this justification cites.
    pub fn refs(&self) -> Vec<usize> {
        match self {
            Justification::Axiom(_) | Justification::Taut => vec![],
            Justification::Mp(i, j) => vec![*i, *j],
            Justification::ReNabla(i) | Justification::ReBullet(i) | Justification::Def(i) => vec![*i],
            Justification::Conseq(v) => v.clone(),
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(n) => write!(f, "AX {n}"),
            Justification::Taut => write!(f, "TAUT"),
            Justification::Mp(i, j) => write!(f, "MP {i} {j}"),
            Justification::ReNabla(i) => write!(f, "RE-NABLA {i}"),
            Justification::ReBullet(i) => write!(f, "RE-BULLET {i}"),
            Justification::Def(i) => write!(f, "DEF {i}"),
            Justification::Conseq(v) => {
                let list: Vec<String> = v.iter().map(|i| i.to_string()).collect();
                write!(f, "CONSEQ {}", list.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub number: usize,
    pub formula: Formula,
    pub justification: Justification,
}

/// A numbered derivation; the last line is the theorem.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Derivation {
    pub lines: Vec<Line>,
}

impl Derivation {
    pub fn theorem(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{}. {} ; {}", l.number, l.formula, l.justification)?;
        }
        Ok(())
    }
}

fn number(tok: &str, line: usize) -> Result<usize, ProofError> {
    tok.trim()
        .parse()
        .map_err(|_| ProofError::Script { line, message: format!("expected a line number, found `{}`", tok.trim()) })
}

fn justification(text: &str, line: usize) -> Result<Justification, ProofError> {
    let text = text.trim();
    let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let args: Vec<&str> = rest.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(ProofError::Script { line, message: format!("{head} takes {n} argument(s)") })
        }
    };
    Ok(match head {
        "AX" => {
            arity(1)?;
            Justification::Axiom(args[0].to_string())
        }
        "TAUT" => {
            arity(0)?;
            Justification::Taut
        }
        "MP" => {
            arity(2)?;
            Justification::Mp(number(args[0], line)?, number(args[1], line)?)
        }
        "RE-NABLA" => {
            arity(1)?;
            Justification::ReNabla(number(args[0], line)?)
        }
        "RE-BULLET" => {
            arity(1)?;
            Justification::ReBullet(number(args[0], line)?)
        }
        "DEF" => {
            arity(1)?;
            Justification::Def(number(args[0], line)?)
        }
        "CONSEQ" => {
            if args.is_empty() {
                return Err(ProofError::Script { line, message: "CONSEQ needs at least one line".into() });
            }
            Justification::Conseq(args.iter().map(|a| number(a, line)).collect::<Result<_, _>>()?)
        }
        other => return Err(ProofError::Script { line, message: format!("unknown justification `{other}`") }),
    })
}

/// Parses a script. Steps must be numbered 1, 2, 3, ... in order.
pub fn parse_script(text: &str) -> Result<Derivation, ProofError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let at = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| ProofError::Script { line: at, message };
        let (num, rest) = body.split_once('.').ok_or_else(|| err("expected `k. formula ; justification`".into()))?;
        let k = number(num, at)?;
        if k != lines.len() + 1 {
            return Err(err(format!("expected step {}, found {k}", lines.len() + 1)));
        }
        let (formula, just) = rest.rsplit_once(';').ok_or_else(|| err("missing `;` before justification".into()))?;
        let formula = parse(formula.trim()).map_err(|e| err(e.to_string()))?;
        lines.push(Line { number: k, formula, justification: justification(just, at)? });
    }
    Ok(Derivation { lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_justifications() {
        let d = parse_script(
            "# header\n\
             1. ?phi <-> ~~?phi ; TAUT\n\
             2. nabla ?phi <-> nabla ~~?phi ; RE-NABLA 1   # trailing\n\
             \n\
             3. bullet ?phi -> ?phi ; AX E2\n\
             4. p ; MP 1 2\n\
             5. p ; CONSEQ 1, 2,3\n\
             6. p ; DEF 5\n\
             7. p ; RE-BULLET 1\n",
        )
        .unwrap();
        assert_eq!(d.lines.len(), 7);
        assert_eq!(d.lines[4].justification, Justification::Conseq(vec![1, 2, 3]));
        assert_eq!(d.lines[2].justification, Justification::Axiom("E2".into()));
        let again = parse_script(&d.to_string()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn script_errors() {
        assert!(matches!(parse_script("1. p ; FOO"), Err(ProofError::Script { line: 1, .. })));
        assert!(matches!(parse_script("2. p ; TAUT"), Err(ProofError::Script { line: 1, .. })));
        assert!(matches!(parse_script("1. p TAUT"), Err(ProofError::Script { .. })));
        assert!(matches!(parse_script("1. p & ; TAUT"), Err(ProofError::Script { .. })));
        assert!(matches!(parse_script("1. p ; MP 1"), Err(ProofError::Script { .. })));
    }
}
