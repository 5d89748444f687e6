//! Recursive-descent parser for the concrete syntax.
//!
//! ```text
//! form  := iff
//! iff   := imp ("<->" iff)?
//! imp   := or ("->" imp)?
//! or    := and ("|" and)*
//! and   := unary ("&" unary)*
//! unary := ("~" | "nabla" | "bullet" | "box" | "diamond" | "delta" | "circ") unary
//!        | atom | "?" atom | "true" | "false" | "(" form ")"
//! ```

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::Formula;

const KEYWORDS: &[&str] = &["nabla", "bullet", "box", "diamond", "delta", "circ", "true", "false"];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Meta(String),
    Top,
    Bot,
    Not,
    Nabla,
    Bullet,
    Box,
    Diamond,
    Delta,
    Circ,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Meta(s) => format!("metavariable `?{s}`"),
            Tok::Top => "`true`".into(),
            Tok::Bot => "`false`".into(),
            Tok::Not => "`~`".into(),
            Tok::Nabla => "`nabla`".into(),
            Tok::Bullet => "`bullet`".into(),
            Tok::Box => "`box`".into(),
            Tok::Diamond => "`diamond`".into(),
            Tok::Delta => "`delta`".into(),
            Tok::Circ => "`circ`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// A syntax error. Line and column are 1-based and count characters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: BTreeSet<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}:{}: found {}", self.line, self.column, self.found)?;
        if !self.expected.is_empty() {
            let list: Vec<&str> = self.expected.iter().map(String::as_str).collect();
            write!(f, ", expected one of {}", list.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, found: String, expected: &[&str]| ParseError {
        line,
        column,
        found,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: start_line, column: start_col });
            *i += width;
            *col += width;
        };
        let rest = |k: usize| chars.get(i + k).copied();
        match c {
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '&' | '∧' => push(Tok::And, 1, &mut i, &mut col),
            '|' | '∨' => push(Tok::Or, 1, &mut i, &mut col),
            '~' | '¬' => push(Tok::Not, 1, &mut i, &mut col),
            '→' => push(Tok::Imp, 1, &mut i, &mut col),
            '↔' => push(Tok::Iff, 1, &mut i, &mut col),
            '∇' => push(Tok::Nabla, 1, &mut i, &mut col),
            '•' => push(Tok::Bullet, 1, &mut i, &mut col),
            '□' => push(Tok::Box, 1, &mut i, &mut col),
            '◇' => push(Tok::Diamond, 1, &mut i, &mut col),
            'Δ' => push(Tok::Delta, 1, &mut i, &mut col),
            '∘' => push(Tok::Circ, 1, &mut i, &mut col),
            '⊤' => push(Tok::Top, 1, &mut i, &mut col),
            '⊥' => push(Tok::Bot, 1, &mut i, &mut col),
            '-' if rest(1) == Some('>') => push(Tok::Imp, 2, &mut i, &mut col),
            '<' if rest(1) == Some('-') && rest(2) == Some('>') => push(Tok::Iff, 3, &mut i, &mut col),
            '?' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let name: String = chars[i + 1..j].iter().collect();
                if name.is_empty() || !name.starts_with(|c: char| c.is_ascii_lowercase()) {
                    return Err(err(line, col, "`?`".into(), &["metavariable name"]));
                }
                push(Tok::Meta(name), j - i, &mut i, &mut col);
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "nabla" => Tok::Nabla,
                    "bullet" => Tok::Bullet,
                    "box" => Tok::Box,
                    "diamond" => Tok::Diamond,
                    "delta" => Tok::Delta,
                    "circ" => Tok::Circ,
                    "true" => Tok::Top,
                    "false" => Tok::Bot,
                    _ if super::is_atom_name(&word) => Tok::Ident(word.clone()),
                    _ => return Err(err(line, col, format!("`{word}`"), &["atom ([a-z][a-z0-9_]*)"])),
                };
                push(tok, j - i, &mut i, &mut col);
            }
            other => {
                return Err(err(line, col, format!("`{other}`"), &[]));
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const OPERAND: &[&str] = &[
    "atom",
    "metavariable",
    "`true`",
    "`false`",
    "`(`",
    "`~`",
    "`nabla`",
    "`bullet`",
    "`box`",
    "`diamond`",
    "`delta`",
    "`circ`",
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            found: here.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Nabla => {
                self.bump();
                Ok(Formula::nabla(self.unary()?))
            }
            Tok::Bullet => {
                self.bump();
                Ok(Formula::bullet(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Delta => {
                self.bump();
                Ok(Formula::not(Formula::nabla(self.unary()?)))
            }
            Tok::Circ => {
                self.bump();
                Ok(Formula::not(Formula::bullet(self.unary()?)))
            }
            Tok::Diamond => {
                self.bump();
                Ok(Formula::not(Formula::boxed(Formula::not(self.unary()?))))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::Meta(name) => {
                self.bump();
                Ok(Formula::Meta(name))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`&`", "`|`", "`->`", "`<->`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

/// Parses a formula. Δ, ∘ and ◇ are desugared on the fly.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.iff()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`&`", "`|`", "`->`", "`<->`", "end of input"]));
    }
    Ok(f)
}
