use serde_json::{json, Value};

use super::{Elem, Ring, RingHom, RingMatrix};
use crate::error::{parse_err, Error, Result};

/// Matrices `A` (`m×n`) and `B` (`n×m`) over a ring, claimed to satisfy
/// `A·B = I_m`, i.e. to witness an epimorphism `R^n → R^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    ring: Ring,
    n: usize,
    m: usize,
    a: RingMatrix,
    b: RingMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    /// `AB = I_m` with `n >= m`.
    Valid,
    /// `AB = I_m` with `n < m`: the ring has bounded generating number.
    ValidBGN,
    /// First entry (1-based, row-major) where `AB` differs from `I_m`.
    Invalid { row: usize, col: usize },
}

impl CertificateStatus {
    pub fn is_valid(self) -> bool {
        !matches!(self, CertificateStatus::Invalid { .. })
    }
}

impl std::fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateStatus::Valid => write!(f, "Valid"),
            CertificateStatus::ValidBGN => write!(f, "ValidBGN"),
            CertificateStatus::Invalid { row, col } => write!(f, "Invalid at ({row}, {col})"),
        }
    }
}

impl RankCertificate {
    pub fn new(ring: Ring, n: usize, m: usize, a: RingMatrix, b: RingMatrix) -> Result<RankCertificate> {
        if n == 0 || m == 0 {
            return Err(Error::Dimension("n and m must be positive".into()));
        }
        if (a.rows(), a.cols()) != (m, n) || (b.rows(), b.cols()) != (n, m) {
            return Err(Error::Dimension(format!(
                "expected A {m}x{n} and B {n}x{m}, got A {}x{} and B {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        for mat in [&a, &b] {
            if *mat.ring() != ring {
                return Err(Error::RingMismatch { expected: ring.to_string(), found: mat.ring().to_string() });
            }
        }
        Ok(RankCertificate { ring, n, m, a, b })
    }

    /// `I_n` as a certificate for `R^n → R^n`.
    pub fn identity(ring: Ring, n: usize) -> RankCertificate {
        let i = RingMatrix::identity(ring.clone(), n);
        RankCertificate { ring, n, m: n, a: i.clone(), b: i }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> &RingMatrix {
        &self.a
    }

    pub fn b(&self) -> &RingMatrix {
        &self.b
    }

    pub fn verify(&self) -> CertificateStatus {
        let ab = self.a.mul(&self.b).expect("shapes checked at construction");
        match ab.first_non_identity() {
            Some((i, j)) => CertificateStatus::Invalid { row: i + 1, col: j + 1 },
            None if self.n < self.m => CertificateStatus::ValidBGN,
            None => CertificateStatus::Valid,
        }
    }

    fn require(&self, what: &str, ok: impl Fn(CertificateStatus) -> bool) -> Result<()> {
        let st = self.verify();
        if ok(st) {
            Ok(())
        } else {
            Err(Error::InvalidCertificate(format!("{what}: input certificate is {st}")))
        }
    }

    /// Re-verifies a freshly built certificate instead of trusting the
    /// construction.
    fn checked(self, what: &str) -> Result<RankCertificate> {
        match self.verify() {
            CertificateStatus::Invalid { row, col } => Err(Error::InvalidCertificate(format!(
                "{what}: constructed certificate fails at ({row}, {col})"
            ))),
            _ => Ok(self),
        }
    }

    /// From a certificate for `R^n → R^{n+1}`, one for `R^n → R^target`.
    ///
    /// Inductively, with `(P, Q)` for `R^n → R^{n+k-1}`, the composite
    /// `R^n → R^{n+k-1} ≅ R^n ⊕ R^{k-1} → R^{n+1} ⊕ R^{k-1} ≅ R^{n+k}`
    /// is `P' = diag(A, I_{k-1})·P` with section `Q' = Q·diag(B, I_{k-1})`.
    pub fn extend(&self, target: usize) -> Result<RankCertificate> {
        self.require("extend", |s| s == CertificateStatus::ValidBGN)?;
        if self.m != self.n + 1 {
            return Err(Error::Precondition(format!("extend needs m = n + 1, got n = {}, m = {}", self.n, self.m)));
        }
        if target <= self.n {
            return Err(Error::InvalidArgument(format!("target {target} must exceed n = {}", self.n)));
        }
        let mut p = self.a.clone();
        let mut q = self.b.clone();
        for k in 2..=(target - self.n) {
            let id = RingMatrix::identity(self.ring.clone(), k - 1);
            let xi = RingMatrix::block_diagonal(self.ring.clone(), &[&self.a, &id]);
            let xi_section = RingMatrix::block_diagonal(self.ring.clone(), &[&self.b, &id]);
            p = xi.mul(&p)?;
            q = q.mul(&xi_section)?;
        }
        RankCertificate::new(self.ring.clone(), self.n, target, p, q)?.checked("extend")
    }

    /// `(Bᵗ, Aᵗ)` over the opposite ring, where `Bᵗ ∘ Aᵗ = (AB)ᵗ = I_m`.
    pub fn opposite(&self) -> Result<RankCertificate> {
        self.require("opposite", CertificateStatus::is_valid)?;
        let op = self.ring.opposite();
        let a = self.b.transpose().with_ring(op.clone());
        let b = self.a.transpose().with_ring(op.clone());
        RankCertificate::new(op, self.n, self.m, a, b)?.checked("opposite")
    }

    /// Flattens a certificate over `M_s(R)` into one over `R` of `s` times
    /// the size.
    pub fn block_down(&self) -> Result<RankCertificate> {
        self.require("block_down", CertificateStatus::is_valid)?;
        let (base, s) = match &self.ring {
            Ring::Matrix { base, size } => ((**base).clone(), *size),
            r => return Err(Error::InvalidArgument(format!("block_down needs a matrix ring, got {r}"))),
        };
        let flatten = |mat: &RingMatrix| {
            RingMatrix::from_fn(base.clone(), mat.rows() * s, mat.cols() * s, |i, j| match mat.get(i / s, j / s) {
                Elem::Matrix(es) => es[(i % s) * s + j % s].clone(),
                _ => unreachable!("matrix ring entries are matrices"),
            })
        };
        RankCertificate::new(base.clone(), self.n * s, self.m * s, flatten(&self.a), flatten(&self.b))?
            .checked("block_down")
    }

    /// Groups a certificate over `R` into `s×s` blocks, giving one over
    /// `M_s(R)`.
    pub fn block_up(&self, s: usize) -> Result<RankCertificate> {
        if s == 0 || self.n % s != 0 || self.m % s != 0 {
            return Err(Error::Dimension(format!("n = {} and m = {} must be divisible by s = {s}", self.n, self.m)));
        }
        self.require("block_up", CertificateStatus::is_valid)?;
        if s == 1 {
            return Ok(self.clone());
        }
        let ring = Ring::matrix(self.ring.clone(), s);
        let group = |mat: &RingMatrix| {
            RingMatrix::from_fn(ring.clone(), mat.rows() / s, mat.cols() / s, |i, j| {
                let mut es = Vec::with_capacity(s * s);
                for a in 0..s {
                    for b in 0..s {
                        es.push(mat.get(i * s + a, j * s + b).clone());
                    }
                }
                Elem::Matrix(es)
            })
        };
        RankCertificate::new(ring.clone(), self.n / s, self.m / s, group(&self.a), group(&self.b))?
            .checked("block_up")
    }

    /// Componentwise certificate over `R_1 × ... × R_t` from BGN
    /// certificates with `m_i = n_i + 1`, all brought to `(b, b+1)` with
    /// `b = max n_i` first.
    pub fn product(certs: &[RankCertificate]) -> Result<RankCertificate> {
        if certs.is_empty() {
            return Err(Error::InvalidArgument("product of no certificates".into()));
        }
        for (i, c) in certs.iter().enumerate() {
            if c.verify() != CertificateStatus::ValidBGN || c.m != c.n + 1 {
                return Err(Error::Precondition(format!(
                    "factor {} is not a BGN certificate with m = n + 1 ({}, n = {}, m = {})",
                    i + 1,
                    c.verify(),
                    c.n,
                    c.m
                )));
            }
        }
        if certs.len() == 1 {
            return Ok(certs[0].clone());
        }
        let b = certs.iter().map(|c| c.n).max().expect("nonempty");
        // R^{n_i} → R^{b+1} padded to R^b by zero columns, section by zero rows
        let padded: Vec<(RingMatrix, RingMatrix)> = certs
            .iter()
            .map(|c| {
                let e = if c.m == b + 1 { c.clone() } else { c.extend(b + 1)? };
                let r = &c.ring;
                let a = RingMatrix::from_fn(r.clone(), b + 1, b, |i, j| {
                    if j < c.n { e.a.get(i, j).clone() } else { r.zero() }
                });
                let bm = RingMatrix::from_fn(r.clone(), b, b + 1, |i, j| {
                    if i < c.n { e.b.get(i, j).clone() } else { r.zero() }
                });
                Ok((a, bm))
            })
            .collect::<Result<_>>()?;
        let ring = Ring::Product(certs.iter().map(|c| c.ring.clone()).collect());
        let a = RingMatrix::from_fn(ring.clone(), b + 1, b, |i, j| {
            Elem::Tuple(padded.iter().map(|(a, _)| a.get(i, j).clone()).collect())
        });
        let bm = RingMatrix::from_fn(ring.clone(), b, b + 1, |i, j| {
            Elem::Tuple(padded.iter().map(|(_, bm)| bm.get(i, j).clone()).collect())
        });
        RankCertificate::new(ring, b, b + 1, a, bm)?.checked("product")
    }

    /// Entrywise image under a unital ring homomorphism.
    pub fn map_hom(&self, phi: &RingHom) -> Result<RankCertificate> {
        self.require("hom", CertificateStatus::is_valid)?;
        if *phi.source() != self.ring {
            return Err(Error::RingMismatch { expected: phi.source().to_string(), found: self.ring.to_string() });
        }
        phi.check_unital()?;
        let t = phi.target().clone();
        let a = self.a.map(t.clone(), |x| phi.apply(x));
        let b = self.b.map(t.clone(), |x| phi.apply(x));
        RankCertificate::new(t, self.n, self.m, a, b)?.checked("hom")
    }

    pub fn to_json(&self) -> Value {
        let rows = |mat: &RingMatrix| -> Value {
            Value::Array(
                (0..mat.rows())
                    .map(|i| Value::Array((0..mat.cols()).map(|j| self.ring.elem_to_json(mat.get(i, j))).collect()))
                    .collect(),
            )
        };
        json!({
            "ring": self.ring.to_string(),
            "n": self.n,
            "m": self.m,
            "A": rows(&self.a),
            "B": rows(&self.b),
        })
    }

    pub fn from_json(v: &Value) -> Result<RankCertificate> {
        let ring: Ring = v
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("certificate needs a \"ring\" string"))?
            .parse()?;
        let dim = |k: &str| -> Result<usize> {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| parse_err(format!("certificate needs a positive integer \"{k}\"")))
        };
        let (n, m) = (dim("n")?, dim("m")?);
        let matrix = |k: &str, rows: usize, cols: usize| -> Result<RingMatrix> {
            let rs = v
                .get(k)
                .and_then(Value::as_array)
                .filter(|r| r.len() == rows)
                .ok_or_else(|| parse_err(format!("\"{k}\" must be an array of {rows} rows")))?;
            let mut entries = Vec::with_capacity(rows * cols);
            for r in rs {
                let cells = r
                    .as_array()
                    .filter(|c| c.len() == cols)
                    .ok_or_else(|| parse_err(format!("each row of \"{k}\" must have {cols} entries")))?;
                for c in cells {
                    entries.push(ring.elem_from_json(c)?);
                }
            }
            RingMatrix::new(ring.clone(), rows, cols, entries)
        };
        let a = matrix("A", m, n)?;
        let b = matrix("B", n, m)?;
        RankCertificate::new(ring.clone(), n, m, a, b)
    }
}
