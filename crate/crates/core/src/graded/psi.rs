//! The block embedding `Ψ` of a `Z`-graded ring with free homogeneous
//! components into `Z × Z`-indexed matrices over its degree-0 part.
//!
//! `θ(r)(x, y)` is left multiplication by `r_{x-y}`, a map `R_y → R_x`
//! represented by a matrix `M` in the chosen right bases. `Ψ(θ(r))` has
//! entry `M(ρ(i), ρ(j))` at `((x, i), (y, j))` when `i` and `j` lie in the
//! same numbered block of lengths `n_x` and `n_y`, and `0` otherwise.

use std::collections::BTreeMap;

use crate::algebras::weyl::{WeylAlgebra, WeylElem};
use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// A `Z`-graded ring whose components are free right modules of finite
/// rank over the degree-0 component, with fixed bases.
pub trait FreelyZGraded {
    fn ring(&self) -> Ring;
    fn basis(&self, d: i64) -> Result<Vec<Elem>>;
    /// Coordinates `c` of a degree-`d` element: `r = Σ basis_i · c_i`.
    fn right_coordinates(&self, r: &Elem, d: i64) -> Result<Vec<Elem>>;
    /// Nonzero homogeneous components, by degree.
    fn components(&self, r: &Elem) -> Result<Vec<(i64, Elem)>>;
}

fn weyl(x: &Elem) -> Result<&WeylElem> {
    match x {
        Elem::Weyl(e) => Ok(e),
        _ => Err(Error::InvalidArgument("expected a Weyl algebra element".into())),
    }
}

impl FreelyZGraded for WeylAlgebra {
    fn ring(&self) -> Ring {
        Ring::Weyl(self.clone().into())
    }

    fn basis(&self, d: i64) -> Result<Vec<Elem>> {
        Ok(self.basis_elements(d).into_iter().map(Elem::Weyl).collect())
    }

    fn right_coordinates(&self, r: &Elem, d: i64) -> Result<Vec<Elem>> {
        Ok(WeylAlgebra::right_coordinates(self, weyl(r)?, d)?.into_iter().map(Elem::Weyl).collect())
    }

    fn components(&self, r: &Elem) -> Result<Vec<(i64, Elem)>> {
        let r = weyl(r)?;
        Ok(self.degrees(r).into_iter().map(|d| (d, Elem::Weyl(self.component(r, d)))).collect())
    }
}

/// `ρ_n(k) - 1`, the 0-based position of `k` inside its block.
pub fn rho0(n: usize, k: i64) -> usize {
    (k - 1).rem_euclid(n as i64) as usize
}

fn block(n: usize, k: i64) -> i64 {
    (k - 1).div_euclid(n as i64)
}

/// `Ψ(θ(r))` for one element, with the matrices `M^{(x,y)}` cached.
pub struct PsiImage<'a, A: FreelyZGraded + ?Sized> {
    alg: &'a A,
    ring: Ring,
    components: BTreeMap<i64, Elem>,
    ranks: BTreeMap<i64, usize>,
    blocks: BTreeMap<(i64, i64), Vec<Vec<Elem>>>,
}

impl<'a, A: FreelyZGraded + ?Sized> PsiImage<'a, A> {
    pub fn new(alg: &'a A, r: &Elem) -> Result<PsiImage<'a, A>> {
        let components = alg.components(r)?.into_iter().collect();
        Ok(PsiImage { alg, ring: alg.ring(), components, ranks: BTreeMap::new(), blocks: BTreeMap::new() })
    }

    /// Degrees `x - y` where `θ(r)` is nonzero.
    pub fn support(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn rank(&mut self, d: i64) -> Result<usize> {
        if let Some(&n) = self.ranks.get(&d) {
            return Ok(n);
        }
        let n = self.alg.basis(d)?.len();
        if n == 0 {
            return Err(Error::Precondition(format!("component of degree {d} has no basis")));
        }
        self.ranks.insert(d, n);
        Ok(n)
    }

    /// `M^{(x,y)}` of `θ(r)(x, y)`; `None` when `r_{x-y} = 0`.
    pub fn block_matrix(&mut self, x: i64, y: i64) -> Result<Option<&Vec<Vec<Elem>>>> {
        let Some(rd) = self.components.get(&(x - y)).cloned() else { return Ok(None) };
        if !self.blocks.contains_key(&(x, y)) {
            let nx = self.rank(x)?;
            let mut m = vec![Vec::new(); nx];
            for b in self.alg.basis(y)? {
                let coords = self.alg.right_coordinates(&self.ring.mul(&rd, &b), x)?;
                if coords.len() != nx {
                    return Err(Error::Dimension(format!("expected {nx} coordinates in degree {x}")));
                }
                for (row, c) in m.iter_mut().zip(coords) {
                    row.push(c);
                }
            }
            self.blocks.insert((x, y), m);
        }
        Ok(self.blocks.get(&(x, y)))
    }

    /// Entry `((x, i), (y, j))`.
    pub fn entry(&mut self, x: i64, i: i64, y: i64, j: i64) -> Result<Elem> {
        let (nx, ny) = (self.rank(x)?, self.rank(y)?);
        if block(nx, i) != block(ny, j) {
            return Ok(self.ring.zero());
        }
        Ok(match self.block_matrix(x, y)? {
            Some(m) => m[rho0(nx, i)][rho0(ny, j)].clone(),
            None => self.ring.zero(),
        })
    }

    /// Entry `((x, i), (z, j))` of `Ψ(θ(r)) Ψ(θ(s))`, summed over every
    /// middle index where either factor can be nonzero.
    pub fn product_entry(&mut self, other: &mut PsiImage<'a, A>, x: i64, i: i64, z: i64, j: i64) -> Result<Elem> {
        let mut total = self.ring.zero();
        let nx = self.rank(x)?;
        for d in self.support() {
            let y = x - d;
            if !other.components.contains_key(&(y - z)) {
                continue;
            }
            let ny = self.rank(y)?;
            let b = block(nx, i);
            for k in b * ny as i64 + 1..=(b + 1) * ny as i64 {
                let a = self.entry(x, i, y, k)?;
                if self.ring.is_zero(&a) {
                    continue;
                }
                let c = other.entry(y, k, z, j)?;
                total = self.ring.add(&total, &self.ring.mul(&a, &c));
            }
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub degrees: (i64, i64),
    pub window: (i64, i64),
    pub samples: usize,
    pub entries_checked: usize,
    pub unital: bool,
    pub additive_failures: Vec<String>,
    pub multiplicative_failures: Vec<String>,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.unital && self.additive_failures.is_empty() && self.multiplicative_failures.is_empty()
    }
}

/// Checks unitality of `Ψ∘θ`, and additivity and multiplicativity on every
/// ordered pair of samples, entrywise for degrees in `degrees` and indices
/// in `window`.
pub fn psi_embedding_check<A: FreelyZGraded + ?Sized>(
    alg: &A,
    samples: &[Elem],
    degrees: (i64, i64),
    window: (i64, i64),
) -> Result<PsiReport> {
    if degrees.0 > degrees.1 || window.0 > window.1 {
        return Err(Error::InvalidArgument("empty window".into()));
    }
    let ring = alg.ring();
    if let Some(x) = samples.iter().find(|x| !ring.contains(x)) {
        return Err(Error::InvalidArgument(format!("{} is not an element of {ring}", ring.format_elem(x))));
    }
    let cells: Vec<(i64, i64)> =
        (degrees.0..=degrees.1).flat_map(|x| (window.0..=window.1).map(move |i| (x, i))).collect();
    let mut entries_checked = 0;

    let mut one = PsiImage::new(alg, &ring.one())?;
    let mut unital = true;
    for &(x, i) in &cells {
        for &(y, j) in &cells {
            let e = one.entry(x, i, y, j)?;
            unital &= if (x, i) == (y, j) { ring.is_one(&e) } else { ring.is_zero(&e) };
            entries_checked += 1;
        }
    }

    let mut additive_failures = Vec::new();
    let mut multiplicative_failures = Vec::new();
    let differ = |p: &Elem, q: &Elem| !ring.is_zero(&ring.sub(p, q));
    for (a, ea) in samples.iter().enumerate() {
        for (b, eb) in samples.iter().enumerate() {
            let mut ra = PsiImage::new(alg, ea)?;
            let mut rb = PsiImage::new(alg, eb)?;
            let mut sum = PsiImage::new(alg, &ring.add(ea, eb))?;
            let mut prod = PsiImage::new(alg, &ring.mul(ea, eb))?;
            for &(x, i) in &cells {
                for &(y, j) in &cells {
                    entries_checked += 1;
                    let lhs = ring.add(&ra.entry(x, i, y, j)?, &rb.entry(x, i, y, j)?);
                    if differ(&lhs, &sum.entry(x, i, y, j)?) {
                        additive_failures.push(format!("samples {a}+{b} at (({x},{i}),({y},{j}))"));
                    }
                    let lhs = ra.product_entry(&mut rb, x, i, y, j)?;
                    if differ(&lhs, &prod.entry(x, i, y, j)?) {
                        multiplicative_failures.push(format!("samples {a}*{b} at (({x},{i}),({y},{j}))"));
                    }
                }
            }
        }
    }
    Ok(PsiReport {
        degrees,
        window,
        samples: samples.len(),
        entries_checked,
        unital,
        additive_failures,
        multiplicative_failures,
    })
}
