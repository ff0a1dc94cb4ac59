//! Elements of `Z[1/k]` kept as `num / k^exp` in lowest terms.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Result};

/// `num / k^exp` with `exp` minimal; zero is always `0 / k^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KAdic {
    num: BigInt,
    exp: u32,
    k: u32,
}

fn kpow(k: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(k), e as usize)
}

impl KAdic {
    pub fn zero(k: u32) -> Self {
        KAdic { num: BigInt::zero(), exp: 0, k }
    }

    pub fn integer(n: impl Into<BigInt>, k: u32) -> Self {
        KAdic { num: n.into(), exp: 0, k }
    }

    pub fn new(num: BigInt, exp: u32, k: u32) -> Self {
        let mut t = KAdic { num, exp, k };
        t.reduce();
        t
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let kb = BigInt::from(self.k);
        while self.exp > 0 && (&self.num % &kb).is_zero() {
            self.num /= &kb;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn base(&self) -> u32 {
        self.k
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = self.exp.max(other.exp);
        let a = &self.num * kpow(self.k, e - self.exp);
        let b = &other.num * kpow(self.k, e - other.exp);
        KAdic::new(a + b, e, self.k)
    }

    pub fn neg(&self) -> Self {
        KAdic { num: -&self.num, exp: self.exp, k: self.k }
    }

    /// Multiplies by `k^m`; `m` may be negative.
    pub fn scale(&self, m: i64) -> Self {
        if m >= 0 {
            KAdic::new(&self.num * kpow(self.k, m as u32), self.exp, self.k)
        } else {
            KAdic::new(self.num.clone(), self.exp + (-m) as u32, self.k)
        }
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn is_multiple_of_base(&self) -> bool {
        self.exp == 0 && (&self.num % BigInt::from(self.k)).is_zero()
    }

    /// Representative of `t mod 1` in `[0, 1)`.
    pub fn fractional(&self) -> Self {
        let d = kpow(self.k, self.exp);
        KAdic::new(self.num.mod_floor(&d), self.exp, self.k)
    }

    pub fn parse(s: &str, k: u32) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| parse_err(format!("bad numerator `{n}`")))?;
        let mut den: BigInt = d.parse().map_err(|_| parse_err(format!("bad denominator `{d}`")))?;
        if !den.is_positive() {
            return Err(parse_err("denominator must be positive"));
        }
        let kb = BigInt::from(k);
        let mut exp = 0u32;
        while !den.is_one() {
            if !(&den % &kb).is_zero() {
                return Err(parse_err(format!("`{s}` is not in Z[1/{k}]")));
            }
            den /= &kb;
            exp += 1;
        }
        Ok(KAdic::new(num, exp, k))
    }
}

impl std::fmt::Display for KAdic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, kpow(self.k, self.exp))
        }
    }
}

impl Ord for KAdic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = &self.num * kpow(self.k, e - self.exp);
        let b = &other.num * kpow(other.k, e - other.exp);
        a.cmp(&b).then(self.k.cmp(&other.k))
    }
}

impl PartialOrd for KAdic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
