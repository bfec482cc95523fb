//! Recursive-descent parser for polynomial text.
//!
//! `+ - * / ^`, parentheses, unary minus and implicit multiplication by
//! juxtaposition (`2x`, `3(y+1)`). `eps` or `ε` is the cube root of unity
//! unless the table has a variable of that name. Division is only by units.

use num_bigint::BigInt;
use thiserror::Error;

use super::{Polynomial, Table};
use crate::cyclo::{Cyclo, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl Lexer {
    fn new(text: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Num(s.parse().unwrap()), start));
            } else if is_ident_start(c) {
                let start = i;
                while i < chars.len() && is_ident_continue(chars[i]) {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Op(c), i));
                i += 1;
            } else if c == '−' {
                toks.push((Tok::Op('-'), i));
                i += 1;
            } else if c == '·' {
                toks.push((Tok::Op('*'), i));
                i += 1;
            } else {
                return Err(ParseError { position: i, message: format!("unexpected character `{}`", c) });
            }
        }
        toks.push((Tok::End, chars.len()));
        Ok(Lexer { toks })
    }
}

/// Variable-like identifiers of `text` in order of first appearance (`eps`/`ε` excluded).
pub fn identifiers(text: &str) -> Result<Vec<String>, ParseError> {
    let mut out: Vec<String> = Vec::new();
    for (t, _) in Lexer::new(text)?.toks {
        if let Tok::Ident(name) = t {
            if name != "eps" && name != "ε" && !out.contains(&name) {
                out.push(name);
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    table: &'a Table,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

pub(super) fn parse(table: &Table, text: &str) -> Result<Polynomial, ParseError> {
    let lexer = Lexer::new(text)?;
    let mut p = Parser { table, toks: lexer.toks, pos: 0 };
    if p.peek() == &Tok::End {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        t => Err(p.error(&format!("unexpected token {:?}", t))),
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError { position: self.offset(), message: message.to_string() }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.checked_mul(&acc, &rhs)?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let at = self.offset();
                    let d = self.unary()?;
                    let inv = d.unit_inverse().ok_or_else(|| ParseError {
                        position: at,
                        message: format!("division by non-unit `{}`", d),
                    })?;
                    acc = self.checked_mul(&acc, &inv)?;
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Op('(') => {
                    let rhs = self.power()?;
                    acc = self.checked_mul(&acc, &rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn checked_mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, ParseError> {
        a.checked_mul(b).map_err(|e| self.error(&e.to_string()))
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let e = self.exponent()?;
        base.powi(e).map_err(|_| ParseError {
            position: at,
            message: format!("negative power of non-unit `{}`", base),
        })
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.peek() == &Tok::Op('(');
        if paren {
            self.bump();
        }
        let neg = match self.peek() {
            Tok::Op('-') => {
                self.bump();
                true
            }
            _ => false,
        };
        let e = match self.bump() {
            Tok::Num(n) => i64::try_from(&n)
                .ok()
                .filter(|v| *v <= i32::MAX as i64)
                .ok_or_else(|| self.error("exponent too large"))?,
            _ => return Err(self.error("expected integer exponent")),
        };
        if paren && self.bump() != Tok::Op(')') {
            return Err(self.error("expected `)`"));
        }
        Ok(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(Polynomial::constant(self.table, Cyclo::from_rational(Rational::from_integer(n)))),
            Tok::Ident(name) => {
                if let Ok(v) = Polynomial::var(self.table, &name) {
                    Ok(v)
                } else if name == "eps" || name == "ε" {
                    Ok(Polynomial::constant(self.table, Cyclo::eps()))
                } else {
                    Err(ParseError { position: at, message: format!("unknown variable `{}`", name) })
                }
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.bump() != Tok::Op(')') {
                    return Err(ParseError { position: self.toks[self.pos - 1].1, message: "expected `)`".into() });
                }
                Ok(inner)
            }
            Tok::End => Err(ParseError { position: at, message: "unexpected end of input".into() }),
            t => Err(ParseError { position: at, message: format!("unexpected token {:?}", t) }),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::cyclo::Cyclo;
    use crate::poly::{Polynomial, VarTable};

    #[test]
    fn precedence_and_juxtaposition() {
        let t = VarTable::new(["x", "y"]).unwrap();
        assert_eq!(t.parse("-x^2").unwrap(), -t.parse("x*x").unwrap());
        assert_eq!(t.parse("2x").unwrap(), t.parse("2*x").unwrap());
        assert_eq!(t.parse("3(x + 1)y").unwrap(), t.parse("3*x*y + 3*y").unwrap());
        assert_eq!(t.parse("x - y - 1").unwrap(), t.parse("x - (y + 1)").unwrap());
        assert_eq!(t.parse("x^(2)").unwrap(), t.parse("x^2").unwrap());
    }

    #[test]
    fn eps_constant() {
        let t = VarTable::new(["x"]).unwrap();
        assert_eq!(t.parse("eps^2 + eps + 1").unwrap(), Polynomial::zero(&t));
        assert_eq!(t.parse("ε").unwrap().as_constant(), Some(Cyclo::eps()));
    }

    #[test]
    fn errors_carry_positions() {
        let t = VarTable::new(["x"]).unwrap();
        let e = t.parse("x + q").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(t.parse("x/(x+1)").is_err());
        assert!(t.parse("x^-1").is_err());
        assert!(t.parse("(x").is_err());
        assert!(t.parse("").is_err());
        assert!(t.parse("x $").is_err());
        let l = VarTable::with_laurent(["s"], &["s"]).unwrap();
        assert_eq!(l.parse("1/s").unwrap(), l.parse("s^-1").unwrap());
    }
}
