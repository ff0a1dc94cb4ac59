//! Compressing a certificate over `T_G(X,R)` to one over `R` by restricting
//! to a Følner set.

use serde_json::{json, Value};

use super::TranslationElement;
use crate::amenability::SubsetPredicate;
use crate::error::{parse_err, Error, Result};
use crate::groups::{FiniteSet, GroupDescriptor, GroupElement};
use crate::rings::{CertificateStatus, RankCertificate, Ring, RingMatrix};

/// `A` (`m × n`, row-major) and `B` (`n × m`) over `T_G(X,R)` with `AB = I_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationCertificate {
    pub x: SubsetPredicate,
    pub ring: Ring,
    pub n: usize,
    pub m: usize,
    pub a: Vec<TranslationElement>,
    pub b: Vec<TranslationElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionReport {
    pub certificate: RankCertificate,
    pub status: CertificateStatus,
    pub k: FiniteSet,
    /// `U = KF ∩ X`.
    pub u: Vec<GroupElement>,
    /// `F_X = F ∩ X`.
    pub f_x: Vec<GroupElement>,
    /// Elements of `(F ∪ KF ∪ K²F) ∩ X` on which `AB = I_m` was checked.
    pub window_size: usize,
}

impl TranslationCertificate {
    pub fn new(
        x: SubsetPredicate,
        ring: Ring,
        n: usize,
        m: usize,
        a: Vec<TranslationElement>,
        b: Vec<TranslationElement>,
    ) -> Result<TranslationCertificate> {
        if a.len() != m * n || b.len() != n * m {
            return Err(Error::Dimension(format!("expected {m}x{n} and {n}x{m} matrices")));
        }
        for e in a.iter().chain(&b) {
            if e.subset() != &x || e.ring() != &ring {
                return Err(Error::RingMismatch { expected: format!("T({x}, {ring})"), found: format!("T({}, {})", e.subset(), e.ring()) });
            }
        }
        Ok(TranslationCertificate { x, ring, n, m, a, b })
    }

    pub fn a_entry(&self, i: usize, j: usize) -> &TranslationElement {
        &self.a[i * self.n + j]
    }

    pub fn b_entry(&self, j: usize, i: usize) -> &TranslationElement {
        &self.b[j * self.m + i]
    }

    /// `{1} ∪ K_ij ∪ K_ij⁻¹ ∪ L_ji ∪ L_ji⁻¹` over all entries.
    pub fn propagation_set(&self) -> FiniteSet {
        let g = self.x.group();
        let mut k = FiniteSet::new();
        k.insert(g.identity());
        for e in self.a.iter().chain(&self.b) {
            for s in e.propagation() {
                k.insert(g.inverse(&s));
                k.insert(s);
            }
        }
        k
    }

    /// `(AB)_{ii'} = Σ_j A_ij B_ji'` computed term-wise.
    pub fn product_entry(&self, i: usize, i2: usize) -> Result<TranslationElement> {
        let mut acc = TranslationElement::zero(self.x.clone(), self.ring.clone());
        for j in 0..self.n {
            acc = acc.add(&self.a_entry(i, j).mul(self.b_entry(j, i2))?)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let mat = |es: &[TranslationElement], rows: usize, cols: usize| -> Value {
            Value::Array((0..rows).map(|i| Value::Array((0..cols).map(|j| es[i * cols + j].to_json()).collect())).collect())
        };
        json!({
            "group": self.x.group().to_string(),
            "subset": self.x.rule_text(),
            "ring": self.ring.to_string(),
            "n": self.n,
            "m": self.m,
            "A": mat(&self.a, self.m, self.n),
            "B": mat(&self.b, self.n, self.m),
        })
    }

    pub fn from_json(v: &Value) -> Result<TranslationCertificate> {
        let g: GroupDescriptor = v["group"].as_str().ok_or_else(|| parse_err("missing group"))?.parse()?;
        let x = SubsetPredicate::parse(&g, v["subset"].as_str().unwrap_or("G"))?;
        let ring: Ring = v["ring"].as_str().ok_or_else(|| parse_err("missing ring"))?.parse()?;
        let dim = |k: &str| v[k].as_u64().map(|d| d as usize).ok_or_else(|| parse_err(format!("missing {k}")));
        let (n, m) = (dim("n")?, dim("m")?);
        let mat = |key: &str, rows: usize, cols: usize| -> Result<Vec<TranslationElement>> {
            let rs = v[key].as_array().filter(|r| r.len() == rows).ok_or_else(|| parse_err(format!("{key} must have {rows} rows")))?;
            let mut out = Vec::new();
            for r in rs {
                let cs = r.as_array().filter(|c| c.len() == cols).ok_or_else(|| parse_err(format!("{key} rows must have {cols} entries")))?;
                for c in cs {
                    out.push(TranslationElement::from_json(&x, &ring, c)?);
                }
            }
            Ok(out)
        };
        let a = mat("A", m, n)?;
        let b = mat("B", n, m)?;
        TranslationCertificate::new(x, ring, n, m, a, b)
    }
}

/// Builds `A*((i,f),(j,u)) = A_ij(f,u)` and `B*((j,u),(i,f)) = B_ji(u,f)`
/// for `f ∈ F_X = F ∩ X`, `u ∈ U = KF ∩ X`.
///
/// `k` defaults to the certificate's propagation set; a supplied `K` must be
/// symmetric, contain 1 and dominate every entry. Refuses unless
/// `n|U| < m|F_X|` and `AB = I_m` holds entrywise on `(F ∪ KF ∪ K²F) ∩ X`.
pub fn compress_certificate(
    cert: &TranslationCertificate,
    f: &FiniteSet,
    k: Option<&FiniteSet>,
) -> Result<CompressionReport> {
    let g = cert.x.group();
    let needed = cert.propagation_set();
    let k = match k {
        None => needed,
        Some(k) => {
            if !needed.is_subset(k) {
                return Err(Error::Precondition("K does not dominate the entries of A and B".into()));
            }
            if g.inverse_set(k) != *k {
                return Err(Error::Precondition("K must be symmetric".into()));
            }
            k.clone()
        }
    };
    for e in f {
        g.check(e)?;
    }
    let f_x: Vec<GroupElement> = cert.x.restrict(f).into_iter().collect();
    let kf = g.set_product(&k, f)?;
    let u: Vec<GroupElement> = cert.x.restrict(&kf).into_iter().collect();
    let (lhs, rhs) = (cert.n * u.len(), cert.m * f_x.len());
    if lhs >= rhs {
        return Err(Error::Precondition(format!(
            "Følner inequality fails: n|KF ∩ X| = {lhs} is not below m|F ∩ X| = {rhs}"
        )));
    }

    let k2f = g.set_product(&k, &kf)?;
    let window: Vec<GroupElement> =
        cert.x.restrict(&f.iter().chain(&kf).chain(&k2f).cloned().collect()).into_iter().collect();
    let r = &cert.ring;
    for i in 0..cert.m {
        for i2 in 0..cert.m {
            let p = cert.product_entry(i, i2)?;
            for x in &window {
                for y in &window {
                    let want = if i == i2 && x == y { r.one() } else { r.zero() };
                    if p.entry(x, y)? != want {
                        return Err(Error::InvalidCertificate(format!(
                            "(AB)_({},{}) at ({}, {}) is not {}",
                            i + 1,
                            i2 + 1,
                            g.format_element(x),
                            g.format_element(y),
                            r.format_elem(&want)
                        )));
                    }
                }
            }
        }
    }

    let (nf, nu) = (f_x.len(), u.len());
    let a_star = RingMatrix::from_fn(r.clone(), cert.m * nf, cert.n * nu, |row, col| {
        let (i, fi) = (row / nf, row % nf);
        let (j, ui) = (col / nu, col % nu);
        cert.a_entry(i, j).entry(&f_x[fi], &u[ui]).expect("indices lie in X")
    });
    let b_star = RingMatrix::from_fn(r.clone(), cert.n * nu, cert.m * nf, |row, col| {
        let (j, ui) = (row / nu, row % nu);
        let (i, fi) = (col / nf, col % nf);
        cert.b_entry(j, i).entry(&u[ui], &f_x[fi]).expect("indices lie in X")
    });
    let certificate = RankCertificate::new(r.clone(), cert.n * nu, cert.m * nf, a_star, b_star)?;
    let status = certificate.verify();
    if status != CertificateStatus::ValidBGN {
        return Err(Error::InvalidCertificate(format!("compressed certificate does not verify: {status:?}")));
    }
    Ok(CompressionReport { certificate, status, k, u, f_x, window_size: window.len() })
}
