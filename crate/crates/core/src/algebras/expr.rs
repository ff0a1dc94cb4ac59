//! Parser for polynomial expressions in noncommuting generators.
//!
//! Grammar (whitespace or `*` between factors means multiplication):
//!
//! ```text
//! sum    := ['-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' int] ["'"]*
//! atom   := int ['/' int] | ident | '(' sum ')'
//! ```
//!
//! A trailing `'` denotes the star of a generator (`e1'` is `e1*`).

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{parse_err, Result};
use crate::rings::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Gen(String),
    Star(Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Times,
    Caret,
    Prime,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' | '·' => {
                out.push(Tok::Times);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '\'' => {
                out.push(Tok::Prime);
                i += 1;
            }
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i].iter().collect::<String>().parse().expect("digits");
                // `3/4` is a single rational literal
                let mut den = BigInt::from(1);
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    let ds = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = chars[ds..i].iter().collect::<String>().parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(parse_err("zero denominator"));
                    }
                }
                out.push(Tok::Num(BigRational::new(num, den)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            c => return Err(parse_err(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            terms.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(Tok::Times) => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Open) => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut e = match self.next() {
            Some(Tok::Num(q)) => Expr::Num(q),
            Some(Tok::Ident(name)) => Expr::Gen(name),
            Some(Tok::Open) => {
                let inner = self.sum()?;
                if self.next() != Some(Tok::Close) {
                    return Err(parse_err("missing `)`"));
                }
                inner
            }
            Some(t) => return Err(parse_err(format!("unexpected token {t:?}"))),
            None => return Err(parse_err("unexpected end of expression")),
        };
        loop {
            match self.peek() {
                Some(Tok::Caret) => {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(q)) if q.is_integer() => {
                            let p: u32 = q
                                .to_integer()
                                .try_into()
                                .map_err(|_| parse_err("exponent out of range"))?;
                            e = Expr::Pow(Box::new(e), p);
                        }
                        _ => return Err(parse_err("exponent must be a non-negative integer")),
                    }
                }
                Some(Tok::Prime) => {
                    self.pos += 1;
                    e = Expr::Star(Box::new(e));
                }
                _ => break,
            }
        }
        Ok(e)
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(parse_err("empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(parse_err(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

/// Evaluates an expression in `ring`.
///
/// `gen(name, starred)` resolves generators; `star` is applied to starred
/// compound expressions and may be absent for algebras without an
/// involution.
pub fn evaluate(
    ring: &Ring,
    e: &Expr,
    gen: &dyn Fn(&str, bool) -> Result<Elem>,
    star: Option<&dyn Fn(&Elem) -> Elem>,
) -> Result<Elem> {
    Ok(match e {
        Expr::Num(q) => ring.from_rational(q)?,
        Expr::Gen(name) => gen(name, false)?,
        Expr::Star(inner) => match &**inner {
            Expr::Gen(name) => gen(name, true)?,
            other => {
                let star = star.ok_or_else(|| parse_err("this algebra has no star operation"))?;
                star(&evaluate(ring, other, gen, Some(star))?)
            }
        },
        Expr::Pow(b, p) => ring.pow(&evaluate(ring, b, gen, star)?, *p),
        Expr::Neg(x) => ring.neg(&evaluate(ring, x, gen, star)?),
        Expr::Sum(xs) => {
            let mut acc = ring.zero();
            for x in xs {
                acc = ring.add(&acc, &evaluate(ring, x, gen, star)?);
            }
            acc
        }
        Expr::Product(xs) => {
            let mut acc = ring.one();
            for x in xs {
                acc = ring.mul(&acc, &evaluate(ring, x, gen, star)?);
            }
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_juxtaposition_and_stars() {
        let e = parse_expr("e1 e2'").unwrap();
        assert_eq!(
            e,
            Expr::Product(vec![Expr::Gen("e1".into()), Expr::Star(Box::new(Expr::Gen("e2".into())))])
        );
    }

    #[test]
    fn parses_signs_powers_and_fractions() {
        let e = parse_expr("-1/2 x1^2 y + 3").unwrap();
        match e {
            Expr::Sum(ts) => {
                assert_eq!(ts.len(), 2);
                assert!(matches!(ts[0], Expr::Neg(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_expr("x1 +").is_err());
        assert!(parse_expr("(x1").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("1/0").is_err());
    }
}
