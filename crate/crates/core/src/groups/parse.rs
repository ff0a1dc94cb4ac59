//! Text forms of groups and group elements.
//!
//! Groups: `F2`, `Z`, `Z^3`, `BS(1,2)`, `C(4)`, products joined by `x`.
//! Elements: free words `a b A` (capital = inverse, `1` = identity),
//! integers or `(1, -2)` for `Z^d`, `(t, m)` for `BS(1,k)`, residues for
//! `C(m)`, `[x; y]` for products.

use std::str::FromStr;

use super::{FiniteSet, GroupDescriptor, GroupElement, KAdic};
use crate::error::{parse_err, Error, Result};

/// Splits at `sep` occurrences outside any brackets.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn strip_wrapped<'a>(s: &'a str, open: char, close: char) -> Option<&'a str> {
    let s = s.trim();
    if s.starts_with(open) && s.ends_with(close) && s.len() >= 2 {
        Some(&s[open.len_utf8()..s.len() - close.len_utf8()])
    } else {
        None
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let factors = split_top(s, 'x');
        if factors.len() > 1 {
            return Ok(GroupDescriptor::DirectProduct(
                factors.into_iter().map(str::parse).collect::<Result<Vec<_>>>()?,
            ));
        }
        if s == "Z" {
            return Ok(GroupDescriptor::FreeAbelian(1));
        }
        if let Some(d) = s.strip_prefix("Z^") {
            let d: usize = d.trim().parse().map_err(|_| parse_err(format!("bad rank in `{s}`")))?;
            if d == 0 {
                return Err(parse_err("Z^d needs d >= 1"));
            }
            return Ok(GroupDescriptor::FreeAbelian(d));
        }
        if let Some(k) = s.strip_prefix('F') {
            let k: usize = k.trim().parse().map_err(|_| parse_err(format!("bad rank in `{s}`")))?;
            if k == 0 || k > 26 {
                return Err(parse_err("free group rank must be in 1..=26"));
            }
            return Ok(GroupDescriptor::Free(k));
        }
        if let Some(inner) = s.strip_prefix("BS").and_then(|r| strip_wrapped(r, '(', ')')) {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 2 || parts[0] != "1" {
                return Err(parse_err(format!("expected BS(1,k), found `{s}`")));
            }
            let k: u32 = parts[1].parse().map_err(|_| parse_err(format!("bad k in `{s}`")))?;
            if k < 2 {
                return Err(parse_err("BS(1,k) needs k >= 2"));
            }
            return Ok(GroupDescriptor::BaumslagSolitar(k));
        }
        if let Some(inner) = s.strip_prefix('C').and_then(|r| strip_wrapped(r, '(', ')')) {
            let m: u64 = inner.trim().parse().map_err(|_| parse_err(format!("bad order in `{s}`")))?;
            if m == 0 {
                return Err(parse_err("C(m) needs m >= 1"));
            }
            return Ok(GroupDescriptor::Cyclic(m));
        }
        Err(parse_err(format!("unknown group `{s}`")))
    }
}

fn parse_free_word(s: &str, k: usize) -> Result<Vec<i32>> {
    let s = s.trim();
    if s.is_empty() || s == "1" || s == "e" {
        return Ok(Vec::new());
    }
    let mut letters = Vec::new();
    for tok in s.split_whitespace() {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| parse_err(format!("bad exponent in `{tok}`")))?),
            None => (tok, 1),
        };
        let chars: Vec<char> = base.chars().collect();
        if exp != 1 && chars.len() != 1 {
            return Err(parse_err(format!("exponent applies to a single letter, found `{tok}`")));
        }
        for c in chars {
            if !c.is_ascii_alphabetic() {
                return Err(parse_err(format!("bad letter `{c}`")));
            }
            let idx = (c.to_ascii_lowercase() as u8 - b'a') as i32 + 1;
            if idx as usize > k {
                return Err(parse_err(format!("letter `{c}` exceeds the rank {k}")));
            }
            let l = if c.is_ascii_uppercase() { -idx } else { idx };
            let l = if exp < 0 { -l } else { l };
            for _ in 0..exp.unsigned_abs() {
                letters.push(l);
            }
        }
    }
    Ok(letters)
}

impl GroupDescriptor {
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let s = s.trim();
        let x = match self {
            GroupDescriptor::Free(k) => {
                let w = parse_free_word(s, *k)?;
                self.pow_word(&w)
            }
            GroupDescriptor::FreeAbelian(d) => {
                let inner = strip_wrapped(s, '(', ')').unwrap_or(s);
                let v: Vec<i64> = inner
                    .split(',')
                    .map(|c| c.trim().parse::<i64>().map_err(|_| parse_err(format!("bad integer in `{s}`"))))
                    .collect::<Result<_>>()?;
                if v.len() != *d {
                    return Err(parse_err(format!("expected {d} coordinates, found `{s}`")));
                }
                GroupElement::Abelian(v)
            }
            GroupDescriptor::BaumslagSolitar(k) => {
                let inner = strip_wrapped(s, '(', ')').ok_or_else(|| parse_err(format!("expected (t, m), found `{s}`")))?;
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != 2 {
                    return Err(parse_err(format!("expected (t, m), found `{s}`")));
                }
                let t = KAdic::parse(parts[0], *k)?;
                let m: i64 = parts[1].trim().parse().map_err(|_| parse_err(format!("bad m in `{s}`")))?;
                GroupElement::BaumslagSolitar { t, m }
            }
            GroupDescriptor::Cyclic(m) => {
                let r: i64 = s.parse().map_err(|_| parse_err(format!("bad residue `{s}`")))?;
                GroupElement::Cyclic(r.rem_euclid(*m as i64) as u64)
            }
            GroupDescriptor::DirectProduct(fs) => {
                let inner = strip_wrapped(s, '[', ']').ok_or_else(|| parse_err(format!("expected [x; y], found `{s}`")))?;
                let parts = split_top(inner, ';');
                if parts.len() != fs.len() {
                    return Err(parse_err(format!("expected {} components, found `{s}`", fs.len())));
                }
                GroupElement::Tuple(fs.iter().zip(parts).map(|(f, p)| f.parse_element(p)).collect::<Result<_>>()?)
            }
        };
        Ok(x)
    }

    fn pow_word(&self, w: &[i32]) -> GroupElement {
        w.iter().fold(self.identity(), |acc, &l| self.mul(&acc, &GroupElement::Free(vec![l])))
    }

    pub fn format_element(&self, x: &GroupElement) -> String {
        match x {
            GroupElement::Free(w) => {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|&l| {
                            let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                            if l < 0 { c.to_ascii_uppercase() } else { c }.to_string()
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            }
            GroupElement::Abelian(v) if v.len() == 1 => v[0].to_string(),
            GroupElement::Abelian(v) => {
                format!("({})", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
            }
            GroupElement::BaumslagSolitar { t, m } => format!("({t}, {m})"),
            GroupElement::Cyclic(r) => r.to_string(),
            GroupElement::Tuple(xs) => {
                let fs: Vec<GroupDescriptor> = match self {
                    GroupDescriptor::DirectProduct(fs) => fs.clone(),
                    _ => vec![self.clone(); xs.len()],
                };
                format!(
                    "[{}]",
                    fs.iter().zip(xs).map(|(f, x)| f.format_element(x)).collect::<Vec<_>>().join("; ")
                )
            }
        }
    }

    /// Parses `{x, y, ...}` (braces optional). Elements containing commas
    /// must be bracketed, e.g. `{(1, 0), (0, 1)}`.
    pub fn parse_set(&self, s: &str) -> Result<FiniteSet> {
        let inner = strip_wrapped(s, '{', '}').unwrap_or(s.trim());
        if inner.trim().is_empty() {
            return Ok(FiniteSet::new());
        }
        split_top(inner, ',').into_iter().map(|p| self.parse_element(p)).collect()
    }

    pub fn format_set<'a>(&self, set: impl IntoIterator<Item = &'a GroupElement>) -> String {
        format!("{{{}}}", set.into_iter().map(|x| self.format_element(x)).collect::<Vec<_>>().join(", "))
    }
}
