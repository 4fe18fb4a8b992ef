//! Recursive-descent parser for the polynomial text form.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/')
//! unary)*`, `unary := '-' unary | '+' unary | power`, `power := atom ('^'
//! uint)?`, `atom := number | ident | '(' expr ')'`. Numbers are integers or
//! finite decimals, parsed exactly; division is only allowed by nonzero
//! constants.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::num::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let q = parse_decimal(&s).ok_or_else(|| Error::Parse {
                line,
                column: col,
                message: format!("malformed number `{s}`"),
            })?;
            out.push(Lexed { tok: Tok::Num(q), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if "+-*/^()".contains(c) {
            out.push(Lexed { tok: Tok::Op(c), col });
            i += 1;
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let mut parts = s.split('.');
    let int = parts.next()?;
    let frac = parts.next();
    if parts.next().is_some() || (int.is_empty() && frac.is_none_or(str::is_empty)) {
        return None;
    }
    let int_v: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().ok()? };
    match frac {
        None => Some(Rational::from_integer(int_v)),
        Some(f) if f.is_empty() => Some(Rational::from_integer(int_v)),
        Some(f) => {
            let den = BigInt::from(10).pow(f.len() as u32);
            let fv: BigInt = f.parse().ok()?;
            Some(Rational::new(int_v * &den + fv, den))
        }
    }
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    vars: &'a Vars,
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |l| l.col)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let col = self.col();
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(Error::Parse {
                        line: self.line,
                        column: col,
                        message: "division only by a nonzero constant".into(),
                    });
                }
                acc = acc.scale(&rhs.constant_term().recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(q)) if q.is_integer() => {
                    self.pos += 1;
                    let e: u32 = q.to_integer().try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.vars.clone(), q))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(self.vars.clone(), i)),
                    None => Err(Error::UndeclaredVariable {
                        name,
                        line: self.line,
                        column: col,
                    }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `text` over the declared variables `vars`.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly> {
    parse_poly_at(text, vars, 1, 1)
}

/// Like [`parse_poly`], reporting errors relative to `line` and the 1-based
/// column `col0` where `text` starts.
pub fn parse_poly_at(text: &str, vars: &Vars, line: usize, col0: usize) -> Result<MultiPoly> {
    let toks = lex(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        line,
        end_col,
    };
    if p.toks.is_empty() {
        return Err(p.err("empty polynomial"));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
