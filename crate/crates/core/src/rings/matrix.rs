use super::{Elem, Ring};
use crate::error::{Error, Result};

/// Rectangular matrix over a [`Ring`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl RingMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<RingMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|e| !ring.contains(e)) {
            return Err(Error::InvalidArgument(format!(
                "entry ({}, {}) is not an element of {ring}",
                pos / cols.max(1) + 1,
                pos % cols.max(1) + 1
            )));
        }
        Ok(RingMatrix { ring, rows, cols, entries })
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> RingMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RingMatrix { ring, rows, cols, entries }
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> RingMatrix {
        let z = ring.zero();
        RingMatrix::from_fn(ring, rows, cols, |_, _| z.clone())
    }

    pub fn identity(ring: Ring, size: usize) -> RingMatrix {
        let (z, o) = (ring.zero(), ring.one());
        RingMatrix::from_fn(ring, size, size, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> RingMatrix {
        RingMatrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Same entries, reinterpreted over another ring with the same elements
    /// (used for opposite rings).
    pub fn with_ring(&self, ring: Ring) -> RingMatrix {
        RingMatrix { ring, ..self.clone() }
    }

    pub fn map(&self, ring: Ring, f: impl Fn(&Elem) -> Elem) -> RingMatrix {
        RingMatrix { ring, rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { expected: self.ring.to_string(), found: other.ring.to_string() });
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        Ok(RingMatrix::from_fn(r.clone(), self.rows, other.cols, |i, j| {
            let mut acc = r.zero();
            for k in 0..self.cols {
                let (p, q) = (self.get(i, k), other.get(k, j));
                if r.is_zero(p) || r.is_zero(q) {
                    continue;
                }
                acc = r.add(&acc, &r.mul(p, q));
            }
            acc
        }))
    }

    pub fn add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { expected: self.ring.to_string(), found: other.ring.to_string() });
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("cannot add matrices of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(RingMatrix { entries, ..self.clone() })
    }

    pub fn is_identity(&self) -> bool {
        self.first_non_identity().is_none()
    }

    /// First (row-major, zero-based) position where `self` differs from the
    /// identity matrix.
    pub fn first_non_identity(&self) -> Option<(usize, usize)> {
        let one = self.ring.one();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let ok = if i == j { *e == one } else { self.ring.is_zero(e) };
                if !ok {
                    return Some((i, j));
                }
            }
        }
        if self.rows != self.cols {
            return Some((self.rows.min(self.cols), 0));
        }
        None
    }

    /// `diag(blocks)` for square diagonal blocks over one ring.
    pub fn block_diagonal(ring: Ring, blocks: &[&RingMatrix]) -> RingMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = RingMatrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}
