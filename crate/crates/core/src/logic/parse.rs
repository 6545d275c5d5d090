use std::sync::Arc;

use crate::algebra::Kind;

use super::ast::{Formula, Modality};
use super::LogicError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, LogicError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'>' => Tok::Gt,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'<' => Tok::Lt,
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(LogicError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    kind: Kind,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LogicError> {
        Err(LogicError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), LogicError> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn iff(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implies()?;
            lhs = Formula::Iff(Arc::new(lhs), Arc::new(rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(Formula::Implies(Arc::new(lhs), Arc::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::Or(Arc::new(lhs), Arc::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::And(Arc::new(lhs), Arc::new(rhs));
        }
        Ok(lhs)
    }

    fn modality(&mut self) -> Result<Modality, LogicError> {
        let pos = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Modality::parse(&name, self.kind).map_err(|e| LogicError::Syntax {
                    pos,
                    msg: e.to_string(),
                })
            }
            _ => self.err("expected a relation or modality name"),
        }
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::Not(Arc::new(self.unary()?)))
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let m = self.modality()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Formula::Box(m, Arc::new(self.unary()?)))
            }
            Some(Tok::Lt) => {
                self.pos += 1;
                let m = self.modality()?;
                self.expect(Tok::Gt, "`>`")?;
                Ok(Formula::Diamond(m, Arc::new(self.unary()?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                let first = name.as_bytes()[0];
                match name.as_str() {
                    "true" => {
                        self.pos += 1;
                        Ok(Formula::True)
                    }
                    "false" => {
                        self.pos += 1;
                        Ok(Formula::False)
                    }
                    "nom" => {
                        self.pos += 1;
                        self.expect(Tok::LParen, "`(` after nom")?;
                        let f = self.iff()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Formula::Nom(Arc::new(f)))
                    }
                    _ if first.is_ascii_lowercase() => {
                        self.pos += 1;
                        Ok(Formula::Var(name))
                    }
                    _ => self.err(format!("variables start with a lowercase letter: `{name}`")),
                }
            }
            Some(_) => self.err("expected a formula"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a formula in the given alphabet.
pub fn parse(text: &str, kind: Kind) -> Result<Formula, LogicError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        kind,
    };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseRelation::*;

    #[test]
    fn grammar_examples() {
        let f = parse("<ec> p & [dc] !q", Kind::Rcc8).unwrap();
        assert_eq!(
            f,
            Formula::and(
                Formula::dia_rel(Ec, Formula::var("p")),
                Formula::box_rel(Dc, Formula::not(Formula::var("q")))
            )
        );
        assert_eq!(
            parse("nom(p)", Kind::Rcc8).unwrap(),
            Formula::nom(Formula::var("p"))
        );
        let f = parse("a -> b -> c", Kind::Rcc8).unwrap();
        assert_eq!(f.to_string(), "a -> b -> c");
        assert_eq!(
            f,
            Formula::implies(
                Formula::var("a"),
                Formula::implies(Formula::var("b"), Formula::var("c"))
            )
        );
        let f = parse("a | b & c <-> d", Kind::Rcc8).unwrap();
        assert_eq!(f.to_string(), "a | b & c <-> d");
    }

    #[test]
    fn proper_part_depends_on_alphabet() {
        assert_eq!(
            parse("[pp]p", Kind::Rcc8).unwrap(),
            Formula::boxed(Modality::PP, Formula::var("p"))
        );
        assert_eq!(
            parse("[pp]p", Kind::Rcc5).unwrap(),
            Formula::box_rel(Pp, Formula::var("p"))
        );
        assert!(parse("[tpp]p", Kind::Rcc5).is_err());
        assert!(parse("[dr]p", Kind::Rcc8).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse("p & ", Kind::Rcc8) {
            Err(LogicError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse("p $ q", Kind::Rcc8) {
            Err(LogicError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse("[foo]p", Kind::Rcc8).is_err());
        assert!(parse("(p", Kind::Rcc8).is_err());
        assert!(parse("P", Kind::Rcc8).is_err());
    }
}
