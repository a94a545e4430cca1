//! Parser for integer polynomial expressions such as
//! `3*x2*x0^3 - (a^3 - 2*a)*x0*x1^2*x2`.
//!
//! Juxtaposition means multiplication, so `3x2x0^3` also parses. Identifiers
//! are `x0`..`x3` plus one optional symbol for the algebraic number.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Exponents of `x0..x3` followed by the exponent of the algebraic symbol.
pub type Exp5 = [u32; 5];
pub type IntPoly = BTreeMap<Exp5, i64>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '\u{00b7}' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().map_err(|_| Error::Parse(format!("integer {s} too large")))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                // identifiers are a letter run followed by digits: "x0", "a"
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character '{c}' at offset {i}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    symbol: Option<&'a str>,
}

fn add_into(acc: &mut IntPoly, p: &IntPoly, sign: i64) -> Result<()> {
    for (e, c) in p {
        let v = acc.entry(*e).or_insert(0);
        *v = c.checked_mul(sign).and_then(|t| v.checked_add(t)).ok_or_else(overflow)?;
        if *v == 0 {
            acc.remove(e);
        }
    }
    Ok(())
}

fn overflow() -> Error {
    Error::Parse("integer overflow".into())
}

fn mul(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    let mut out = IntPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = [0u32; 5];
            for i in 0..5 {
                e[i] = ea[i] + eb[i];
            }
            let t = ca.checked_mul(*cb).ok_or_else(overflow)?;
            add_into(&mut out, &IntPoly::from([(e, t)]), 1)?;
        }
    }
    Ok(out)
}

fn constant(c: i64) -> IntPoly {
    if c == 0 {
        IntPoly::new()
    } else {
        IntPoly::from([([0; 5], c)])
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<IntPoly> {
        let mut acc = IntPoly::new();
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            add_into(&mut acc, &t, sign)?;
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = mul(&acc, &f)?;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    let f = self.power()?;
                    acc = mul(&acc, &f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<IntPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(Error::Parse("expected an integer exponent after '^'".into()));
            };
            self.pos += 1;
            let mut acc = constant(1);
            for _ in 0..e {
                acc = mul(&acc, &base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<IntPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(constant(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let mut e = [0u32; 5];
                let idx = match name.as_str() {
                    "x0" => 0,
                    "x1" => 1,
                    "x2" => 2,
                    "x3" => 3,
                    s if Some(s) == self.symbol => 4,
                    s => return Err(Error::Parse(format!("unknown identifier '{s}'"))),
                };
                e[idx] = 1;
                Ok(IntPoly::from([(e, 1)]))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                let inner = self.power()?;
                let mut out = IntPoly::new();
                add_into(&mut out, &inner, -1)?;
                Ok(out)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse an expression in `x0..x3` and the optional algebraic `symbol`.
pub fn parse_int_poly(src: &str, symbol: Option<&str>) -> Result<IntPoly> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, symbol };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}
