//! Expression language for elements and supermatrices.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '.') unary)*
//! unary := ('-' | '+') unary | atom
//! atom  := rational | θk | gk | '(' expr ')' | matrix | call
//! matrix:= '[' '[' expr (',' expr)* ']' (',' '[' ... ']')* ']'
//! call  := ('str' | 'ber') '(' expr ')' | 'pow' '(' expr ',' integer ')'
//! ```
//!
//! A rational literal is `p` or `p/q`. Matrix literals get the smallest
//! even-row count `p >= 1` for which the entries are correctly graded.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannElement, Rational};
use crate::supermatrix::Supermatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Element(GrassmannElement),
    Matrix(Supermatrix),
}

impl Value {
    pub fn to_text(&self, ascii: bool) -> String {
        match self {
            Value::Element(x) => x.to_text(ascii, false),
            Value::Matrix(m) => m.to_text(ascii),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Gen(usize),
    Ident(String),
    Sym(char),
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        (start, *i)
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let (s, e) = digits(&mut i);
            let text: String = chars[s..e].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Num(text.parse().expect("digits"))));
        } else if c == 'θ' || c == 'g' && chars.get(i + 1).is_some_and(|p| p.1.is_ascii_digit()) {
            i += 1;
            let (s, e) = digits(&mut i);
            if s == e {
                return Err(perr(pos, "generator needs an index"));
            }
            let text: String = chars[s..e].iter().map(|p| p.1).collect();
            let k = text
                .parse()
                .map_err(|_| perr(pos, "generator index too large"))?;
            out.push((pos, Tok::Gen(k)));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[s..i].iter().map(|p| p.1).collect())));
        } else if "+-*./()[],".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else if c == '−' {
            out.push((pos, Tok::Sym('-')));
            i += 1;
        } else {
            return Err(perr(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let pos = self.pos();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = add(acc, rhs, false).map_err(|e| located(e, pos))?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = add(acc, rhs, true).map_err(|e| located(e, pos))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') || self.eat('.') {
                let rhs = self.unary()?;
                acc = mul(acc, rhs).map_err(|e| located(e, pos))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            let v = self.unary()?;
            return mul(Value::Element(GrassmannElement::integer(self.n, -1)), v);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Value> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(perr(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Num(p) => {
                let mut q = BigInt::one();
                // `p/q` is a single literal; there is no division operator.
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            self.at += 1;
                            q = d;
                        }
                        _ => return Err(perr(self.pos(), "expected a nonzero denominator")),
                    }
                }
                Ok(Value::Element(GrassmannElement::scalar(
                    self.n,
                    Rational::new(p, q),
                )))
            }
            Tok::Gen(k) => GrassmannElement::theta(self.n, k)
                .map(Value::Element)
                .map_err(|e| located(e, pos)),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Sym('[') => self.matrix(pos),
            Tok::Ident(name) => self.call(&name, pos),
            Tok::Sym(c) => Err(perr(pos, format!("unexpected '{c}'"))),
        }
    }

    fn matrix(&mut self, pos: usize) -> Result<Value> {
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = Vec::new();
            loop {
                let epos = self.pos();
                match self.expr()? {
                    Value::Element(x) => row.push(x),
                    Value::Matrix(_) => return Err(perr(epos, "matrix entries must be elements")),
                }
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(']')?;
            rows.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        infer_supermatrix(rows)
            .map(Value::Matrix)
            .map_err(|e| located(e, pos))
    }

    fn call(&mut self, name: &str, pos: usize) -> Result<Value> {
        self.expect('(')?;
        let arg = self.expr()?;
        let out = match name {
            "str" => Value::Element(as_matrix(arg, pos)?.supertrace()),
            "ber" => Value::Element(
                as_matrix(arg, pos)?
                    .berezinian()
                    .map_err(|e| located(e, pos))?,
            ),
            "pow" => {
                self.expect(',')?;
                let kpos = self.pos();
                let k = match self.expr()? {
                    Value::Element(x) if x.soul().is_zero() && x.body().is_integer() => {
                        x.body().to_integer().to_u32()
                    }
                    _ => None,
                }
                .ok_or_else(|| perr(kpos, "pow exponent must be a nonnegative integer"))?;
                match arg {
                    Value::Element(x) => Value::Element(x.pow(k)),
                    Value::Matrix(m) => Value::Matrix(m.pow(k)),
                }
            }
            other => return Err(perr(pos, format!("unknown function {other:?}"))),
        };
        self.expect(')')?;
        Ok(out)
    }
}

fn located(e: Error, pos: usize) -> Error {
    match e {
        Error::Parse { .. } | Error::NonInvertibleBody => e,
        other => perr(pos, other.to_string()),
    }
}

fn as_matrix(v: Value, pos: usize) -> Result<Supermatrix> {
    match v {
        Value::Matrix(m) => Ok(m),
        Value::Element(_) => Err(perr(pos, "expected a matrix argument")),
    }
}

fn infer_supermatrix(rows: Vec<Vec<GrassmannElement>>) -> Result<Supermatrix> {
    let size = rows.len();
    let mut last = None;
    for even in (1..=size).chain(std::iter::once(0)) {
        match Supermatrix::new(even, size - even, rows.clone()) {
            Ok(m) => return Ok(m),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Shape("empty matrix".into())))
}

fn add(x: Value, y: Value, negate: bool) -> Result<Value> {
    match (x, y) {
        (Value::Element(a), Value::Element(b)) => Ok(Value::Element(if negate {
            a.checked_sub(&b)?
        } else {
            a.checked_add(&b)?
        })),
        (Value::Matrix(a), Value::Matrix(b)) => {
            Ok(Value::Matrix(if negate { a.sub(&b)? } else { a.add(&b)? }))
        }
        _ => Err(Error::Shape("cannot add an element and a matrix".into())),
    }
}

fn mul(x: Value, y: Value) -> Result<Value> {
    match (x, y) {
        (Value::Element(a), Value::Element(b)) => Ok(Value::Element(a.checked_mul(&b)?)),
        (Value::Matrix(a), Value::Matrix(b)) => Ok(Value::Matrix(a.smul(&b)?)),
        // Even scalars commute with every entry.
        (Value::Element(c), Value::Matrix(m)) | (Value::Matrix(m), Value::Element(c)) => {
            Ok(Value::Matrix(m.scale(&c)?))
        }
    }
}

/// Evaluates an expression in `∧(n)`.
pub fn eval(src: &str, n: usize) -> Result<Value> {
    if n > crate::grassmann::MAX_GENERATORS {
        return Err(Error::TooManyGenerators(n));
    }
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
        n,
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return Err(perr(p.pos(), "trailing input"));
    }
    Ok(v)
}

pub fn parse_element(src: &str, n: usize) -> Result<GrassmannElement> {
    match eval(src, n)? {
        Value::Element(x) => Ok(x),
        Value::Matrix(_) => Err(perr(0, "expected an element, found a matrix")),
    }
}
