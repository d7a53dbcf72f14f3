//! Expression parser shared by the element, polynomial and matrix formats.
//!
//! Grammar: `expr := ['-'] term (('+'|'-') term)*`,
//! `term := factor ('*' factor)*`, `factor := atom ['^' int]`,
//! `atom := int | gen | var | '(' expr ')'`.
//! A term is read as coefficient times `var^k`: factors commute
//! syntactically, and a product may involve `var` only through monomials.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Int(t.parse().map_err(|_| Error::parse(format!("bad integer {t}")))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

/// Dense polynomial in the text variable, ascending.
type Val = Vec<Elem>;

struct Parser<'a> {
    field: &'a Field,
    var: Option<&'a str>,
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

fn norm(mut v: Val) -> Val {
    while v.last().is_some_and(|e| e.is_zero()) {
        v.pop();
    }
    v
}

fn is_monomial(v: &Val) -> bool {
    v.iter().filter(|e| !e.is_zero()).count() <= 1
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(format!("{msg} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn add(&self, a: &Val, b: &Val) -> Val {
        let n = a.len().max(b.len());
        let f = self.field;
        norm(
            (0..n)
                .map(|i| {
                    f.add(a.get(i).copied().unwrap_or(Elem::ZERO), b.get(i).copied().unwrap_or(Elem::ZERO))
                })
                .collect(),
        )
    }

    fn neg(&self, a: &Val) -> Val {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }

    fn mul(&self, a: &Val, b: &Val) -> Result<Val> {
        if a.len() > 1 && b.len() > 1 && !(is_monomial(a) && is_monomial(b)) {
            return Err(self.err("products may involve the variable only through monomials"));
        }
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut r = vec![Elem::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.field.add(r[i + j], self.field.mul(x, y));
            }
        }
        Ok(norm(r))
    }

    fn expr(&mut self) -> Result<Val> {
        let mut neg_first = false;
        if self.peek() == Some(&Tok::Op('-')) {
            self.pos += 1;
            neg_first = true;
        } else if self.peek() == Some(&Tok::Op('+')) {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg_first {
            acc = self.neg(&acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(&acc, &t);
                }
                Some(Tok::Op('-')) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(&acc, &self.neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Op('*')) {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Int(e)) => *e,
                _ => return Err(self.err("expected integer exponent")),
            };
            self.pos += 1;
            if e > 1 << 20 {
                return Err(self.err("exponent too large"));
            }
            if base.len() > 1 && !is_monomial(&base) {
                return Err(self.err("only monomials in the variable may be raised to a power"));
            }
            if base.len() <= 1 {
                let c = base.first().copied().unwrap_or(Elem::ZERO);
                let v = self.field.pow(c, e as i64)?;
                return Ok(norm(vec![v]));
            }
            let d = base.len() - 1;
            let c = self.field.pow(base[d], e as i64)?;
            let mut r = vec![Elem::ZERO; d * e as usize + 1];
            r[d * e as usize] = c;
            return Ok(norm(r));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Val> {
        let t = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match t {
            Tok::Int(n) => Ok(norm(vec![self.field.from_int((n % self.field.p() as u64) as i64)])),
            Tok::Ident(id) => {
                if Some(id.as_str()) == self.var || (self.var == Some("x") && id == "X") {
                    Ok(vec![Elem::ZERO, Elem::ONE])
                } else if id == self.field.gen_name() {
                    Ok(norm(vec![self.field.gen()]))
                } else {
                    Err(self.err(&format!("unknown symbol {id:?}")))
                }
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(c) => Err(self.err(&format!("unexpected {c:?}"))),
        }
    }
}

fn run(field: &Field, s: &str, var: Option<&str>) -> Result<Val> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::parse("empty expression"));
    }
    let mut p = Parser { field, var, toks, pos: 0, src: s };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub(crate) fn parse_element(field: &Field, s: &str) -> Result<Elem> {
    let v = run(field, s, None)?;
    Ok(v.first().copied().unwrap_or(Elem::ZERO))
}

/// Coefficients, ascending, of a polynomial in `var`.
pub(crate) fn parse_x_poly(field: &Field, s: &str, var: &str) -> Result<Vec<Elem>> {
    run(field, s, Some(var))
}
