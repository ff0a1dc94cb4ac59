//! Rewriting engines for presented algebras: Leavitt algebras `L(1,n)` and
//! generalized Weyl algebras, plus the expression parser they share.

pub mod expr;
pub mod leavitt;
pub mod weyl;

use num_traits::Signed;

use crate::rings::{Elem, Ring};

fn is_negative(c: &Elem) -> bool {
    match c {
        Elem::Int(v) => v.is_negative(),
        Elem::Rat(v) => v.is_negative(),
        _ => false,
    }
}

/// Formats `Σ c·word` as `2 e1 - e2 e2' + 1/2`, dropping unit coefficients.
pub(crate) fn format_terms<'a>(base: &Ring, terms: impl Iterator<Item = (String, &'a Elem)>) -> String {
    let mut out = String::new();
    for (word, c) in terms {
        let neg = is_negative(c);
        let abs = if neg { base.neg(c) } else { c.clone() };
        let coef = base.format_elem(&abs);
        let body = if word.is_empty() {
            coef
        } else if base.is_one(&abs) {
            word
        } else {
            format!("{coef} {word}")
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
