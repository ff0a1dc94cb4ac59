//! Text and JSON forms of rings and ring elements.
//!
//! Rings: `Z`, `Z/5`, `Q`, `M2(R)`, `op(R)`, `prod(R1, R2)`, `L(1,n)`,
//! `L(1,n; S)`, `Weyl(S; a=a1, a2; b=b1, b2)` and group rings `R[G]` for
//! finite `G`.
//!
//! Elements: integers and fractions for scalar rings; polynomial
//! expressions such as `e1 e2' - 2` or `x1 y + 1` for presented algebras;
//! `[[a, b], [c, d]]` for matrices; `(a, b)` for products;
//! `{g: r, h: s}` for crossed products. In JSON, matrices and products are
//! nested arrays, crossed-product elements are arrays of `[g, r]` pairs and
//! everything else is a string.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use super::{Elem, Ring};
use crate::algebras::leavitt::LeavittAlgebra;
use crate::algebras::weyl::WeylAlgebra;
use crate::error::{parse_err, Error, Result};
use crate::graded::crossed::CrossedSystem;
use crate::groups::parse::split_top;
use crate::groups::GroupDescriptor;

fn wrapped<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(prefix)?.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner)
}

/// Position of the `[` matching a trailing `]`.
fn trailing_bracket(s: &str) -> Option<usize> {
    if !s.ends_with(']') {
        return None;
    }
    let mut depth = 0i32;
    for (i, c) in s.char_indices().rev() {
        match c {
            ']' | ')' | '}' => depth += 1,
            '[' | '(' | '{' => {
                depth -= 1;
                if depth == 0 {
                    return if c == '[' { Some(i) } else { None };
                }
            }
            _ => {}
        }
    }
    None
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let s = s.trim();
        if let Some(i) = trailing_bracket(s).filter(|&i| i > 0) {
            let base: Ring = s[..i].parse()?;
            let group: GroupDescriptor = s[i + 1..s.len() - 1].parse()?;
            return Ok(Ring::Crossed(Arc::new(CrossedSystem::group_ring(base, group)?)));
        }
        match s {
            "Z" => return Ok(Ring::Integers),
            "Q" => return Ok(Ring::Rationals),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("Z/") {
            let m: u64 = m.trim().parse().map_err(|_| parse_err(format!("bad modulus in `{s}`")))?;
            return Ring::integers_mod(m);
        }
        if let Some(inner) = wrapped(s, "op") {
            return Ok(inner.parse::<Ring>()?.opposite());
        }
        if let Some(inner) = wrapped(s, "prod") {
            let factors = split_top(inner, ',').into_iter().map(str::parse).collect::<Result<Vec<Ring>>>()?;
            if factors.is_empty() {
                return Err(parse_err("empty product"));
            }
            return Ok(Ring::Product(factors));
        }
        if let Some(inner) = wrapped(s, "L") {
            let parts = split_top(inner, ';');
            let base = match parts.get(1) {
                Some(b) => b.parse()?,
                None => Ring::Integers,
            };
            let nums: Vec<&str> = parts[0].split(',').map(str::trim).collect();
            if parts.len() > 2 || nums.len() != 2 || nums[0] != "1" {
                return Err(parse_err(format!("expected L(1,n) or L(1,n; S), found `{s}`")));
            }
            let n: usize = nums[1].parse().map_err(|_| parse_err(format!("bad n in `{s}`")))?;
            return Ok(Ring::Leavitt(Arc::new(LeavittAlgebra::new(n, base)?)));
        }
        if let Some(inner) = wrapped(s, "Weyl") {
            let parts = split_top(inner, ';');
            let base: Ring = parts[0].parse()?;
            let (mut a, mut b) = (None, None);
            for p in &parts[1..] {
                let (key, vals) =
                    p.split_once('=').ok_or_else(|| parse_err(format!("expected a=... or b=..., found `{p}`")))?;
                let vals = split_top(vals, ',').into_iter().map(|v| base.parse_elem(v)).collect::<Result<Vec<_>>>()?;
                match key.trim() {
                    "a" => a = Some(vals),
                    "b" => b = Some(vals),
                    k => return Err(parse_err(format!("unknown Weyl parameter `{k}`"))),
                }
            }
            let (a, b) = a.zip(b).ok_or_else(|| parse_err("Weyl rings need both a=... and b=..."))?;
            return Ok(Ring::Weyl(Arc::new(WeylAlgebra::new(base, a, b)?)));
        }
        if let Some(rest) = s.strip_prefix('M') {
            if let Some(open) = rest.find('(') {
                let size: usize =
                    rest[..open].trim().parse().map_err(|_| parse_err(format!("bad matrix size in `{s}`")))?;
                let inner = rest[open..]
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| parse_err(format!("expected Mk(R), found `{s}`")))?;
                if size == 0 {
                    return Err(parse_err("matrix size must be positive"));
                }
                return Ok(Ring::matrix(inner.parse()?, size));
            }
        }
        Err(parse_err(format!("unknown ring `{s}`")))
    }
}

impl Ring {
    /// Image of a rational number, when its denominator is invertible.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        let num = self.from_bigint(q.numer());
        if q.denom().is_one() {
            return Ok(num);
        }
        let den = self.from_bigint(q.denom());
        let inv = self
            .try_inverse(&den)
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not invertible in {self}", q.denom())))?;
        Ok(self.mul(&num, &inv))
    }

    pub fn format_elem(&self, x: &Elem) -> String {
        match (self, x) {
            (_, Elem::Int(v)) => v.to_string(),
            (_, Elem::Rat(v)) => v.to_string(),
            (Ring::Opposite(b), x) => b.format_elem(x),
            (Ring::Matrix { base, size }, Elem::Matrix(es)) => {
                let rows: Vec<String> = es
                    .chunks(*size)
                    .map(|row| format!("[{}]", row.iter().map(|e| base.format_elem(e)).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("[{}]", rows.join(", "))
            }
            (Ring::Product(fs), Elem::Tuple(es)) => {
                format!("({})", fs.iter().zip(es).map(|(f, e)| f.format_elem(e)).collect::<Vec<_>>().join(", "))
            }
            (Ring::Leavitt(a), Elem::Leavitt(e)) => a.format(e),
            (Ring::Weyl(a), Elem::Weyl(e)) => a.format(e),
            (Ring::Crossed(cs), Elem::Crossed(e)) => cs.format(e),
            _ => format!("{x:?}"),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        match self {
            Ring::Integers => {
                let v: BigInt = s.parse().map_err(|_| parse_err(format!("`{s}` is not an integer")))?;
                Ok(Elem::Int(v))
            }
            Ring::IntegersMod(_) | Ring::Rationals => {
                let q = parse_rational(s)?;
                self.from_rational(&q)
            }
            Ring::Opposite(b) => b.parse_elem(s),
            Ring::Matrix { base, size } => {
                let inner = strip(s, '[', ']')?;
                let rows = split_top(inner, ',');
                if rows.len() != *size {
                    return Err(parse_err(format!("expected {size} rows in `{s}`")));
                }
                let mut entries = Vec::with_capacity(size * size);
                for row in rows {
                    let cells = split_top(strip(row, '[', ']')?, ',');
                    if cells.len() != *size {
                        return Err(parse_err(format!("expected {size} columns in `{row}`")));
                    }
                    for c in cells {
                        entries.push(base.parse_elem(c)?);
                    }
                }
                Ok(Elem::Matrix(entries))
            }
            Ring::Product(fs) => {
                let parts = split_top(strip(s, '(', ')')?, ',');
                if parts.len() != fs.len() {
                    return Err(parse_err(format!("expected {} components in `{s}`", fs.len())));
                }
                Ok(Elem::Tuple(fs.iter().zip(parts).map(|(f, p)| f.parse_elem(p)).collect::<Result<_>>()?))
            }
            Ring::Leavitt(a) => Ok(Elem::Leavitt(a.parse(s)?)),
            Ring::Weyl(a) => Ok(Elem::Weyl(a.parse(s)?)),
            Ring::Crossed(cs) => Ok(Elem::Crossed(cs.parse(s)?)),
        }
    }

    pub fn elem_to_json(&self, x: &Elem) -> Value {
        match (self, x) {
            (Ring::Opposite(b), x) => b.elem_to_json(x),
            (Ring::Matrix { base, size }, Elem::Matrix(es)) => Value::Array(
                es.chunks(*size).map(|row| Value::Array(row.iter().map(|e| base.elem_to_json(e)).collect())).collect(),
            ),
            (Ring::Product(fs), Elem::Tuple(es)) => {
                Value::Array(fs.iter().zip(es).map(|(f, e)| f.elem_to_json(e)).collect())
            }
            (Ring::Crossed(cs), Elem::Crossed(e)) => Value::Array(
                e.terms()
                    .map(|(g, c)| {
                        Value::Array(vec![
                            Value::String(cs.group().format_element(&cs.elements()[*g])),
                            cs.base().elem_to_json(c),
                        ])
                    })
                    .collect(),
            ),
            (r, x) => Value::String(r.format_elem(x)),
        }
    }

    pub fn elem_from_json(&self, v: &Value) -> Result<Elem> {
        match (self, v) {
            (Ring::Opposite(b), v) => b.elem_from_json(v),
            (Ring::Matrix { base, size }, Value::Array(rows)) => {
                if rows.len() != *size {
                    return Err(parse_err(format!("expected {size} matrix rows")));
                }
                let mut entries = Vec::with_capacity(size * size);
                for row in rows {
                    let cells = row.as_array().filter(|r| r.len() == *size).ok_or_else(|| {
                        parse_err(format!("expected a row of {size} entries, found {row}"))
                    })?;
                    for c in cells {
                        entries.push(base.elem_from_json(c)?);
                    }
                }
                Ok(Elem::Matrix(entries))
            }
            (Ring::Product(fs), Value::Array(parts)) => {
                if parts.len() != fs.len() {
                    return Err(parse_err(format!("expected {} product components", fs.len())));
                }
                Ok(Elem::Tuple(fs.iter().zip(parts).map(|(f, p)| f.elem_from_json(p)).collect::<Result<_>>()?))
            }
            (Ring::Crossed(cs), Value::Array(pairs)) => {
                let mut acc = cs.zero();
                for p in pairs {
                    let (g, c) = match p.as_array().map(|a| a.as_slice()) {
                        Some([Value::String(g), c]) => (g, c),
                        _ => return Err(parse_err(format!("expected [group element, coefficient], found {p}"))),
                    };
                    let g = cs.index_of(&cs.group().parse_element(g)?)?;
                    acc = cs.add(&acc, &cs.term(g, cs.base().elem_from_json(c)?));
                }
                Ok(Elem::Crossed(acc))
            }
            (_, Value::String(s)) => self.parse_elem(s),
            (_, Value::Number(n)) if self.is_scalar() => self.parse_elem(&n.to_string()),
            _ => Err(parse_err(format!("cannot read {v} as an element of {self}"))),
        }
    }
}

fn strip(s: &str, open: char, close: char) -> Result<&str> {
    let t = s.trim();
    t.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| parse_err(format!("expected `{open}...{close}`, found `{t}`")))
}

/// Parses `"-3/4"` or `"7"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || parse_err(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
