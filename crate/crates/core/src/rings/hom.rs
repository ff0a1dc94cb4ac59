use std::fmt;
use std::sync::Arc;

use super::{Elem, Ring};
use crate::error::{Error, Result};

type MapFn = dyn Fn(&Elem) -> Elem + Send + Sync;

/// A ring homomorphism supplied as an evaluable map.
#[derive(Clone)]
pub struct RingHom {
    name: String,
    source: Ring,
    target: Ring,
    map: Arc<MapFn>,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({}: {} -> {})", self.name, self.source, self.target)
    }
}

impl RingHom {
    pub fn new(
        name: impl Into<String>,
        source: Ring,
        target: Ring,
        map: impl Fn(&Elem) -> Elem + Send + Sync + 'static,
    ) -> RingHom {
        RingHom { name: name.into(), source, target, map: Arc::new(map) }
    }

    pub fn identity(r: Ring) -> RingHom {
        RingHom::new("identity", r.clone(), r, |x| x.clone())
    }

    /// `Z → Z/m`.
    pub fn reduction(m: u64) -> Result<RingHom> {
        let target = Ring::integers_mod(m)?;
        let t = target.clone();
        Ok(RingHom::new(format!("reduction mod {m}"), Ring::Integers, target, move |x| match x {
            Elem::Int(v) => t.from_bigint(v),
            other => other.clone(),
        }))
    }

    /// `Σ r_g g ↦ Σ r_g` on a group ring.
    pub fn augmentation(group_ring: &Ring) -> Result<RingHom> {
        let cs = match group_ring {
            Ring::Crossed(cs) if cs.is_group_ring() => cs.clone(),
            r => return Err(Error::Precondition(format!("augmentation needs a group ring, got {r}"))),
        };
        let target = cs.base().clone();
        let c2 = cs.clone();
        Ok(RingHom::new("augmentation", group_ring.clone(), target, move |x| match x {
            Elem::Crossed(e) => c2.augmentation(e).expect("group ring"),
            other => other.clone(),
        }))
    }

    /// Projection of a finite product onto factor `i` (0-based).
    pub fn projection(product: &Ring, i: usize) -> Result<RingHom> {
        let factors = match product {
            Ring::Product(fs) if i < fs.len() => fs,
            r => return Err(Error::InvalidArgument(format!("no factor {i} in {r}"))),
        };
        Ok(RingHom::new(format!("projection {i}"), product.clone(), factors[i].clone(), move |x| match x {
            Elem::Tuple(es) => es[i].clone(),
            other => other.clone(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        (self.map)(x)
    }

    /// Spot check `φ(1) = 1`.
    pub fn check_unital(&self) -> Result<()> {
        let img = self.apply(&self.source.one());
        if self.target.is_one(&img) {
            Ok(())
        } else {
            Err(Error::NotHomomorphism(format!(
                "{} sends 1 to {}",
                self.name,
                self.target.format_elem(&img)
            )))
        }
    }

    /// Checks additivity and multiplicativity on all pairs of `samples`,
    /// reporting the first failing pair of indices.
    pub fn check_on(&self, samples: &[Elem]) -> Result<()> {
        self.check_unital()?;
        let (s, t) = (&self.source, &self.target);
        for (i, x) in samples.iter().enumerate() {
            for (j, y) in samples.iter().enumerate() {
                let add_ok = self.apply(&s.add(x, y)) == t.add(&self.apply(x), &self.apply(y));
                let mul_ok = self.apply(&s.mul(x, y)) == t.mul(&self.apply(x), &self.apply(y));
                if !(add_ok && mul_ok) {
                    return Err(Error::NotHomomorphism(format!(
                        "{} fails on sample pair ({i}, {j})",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}
