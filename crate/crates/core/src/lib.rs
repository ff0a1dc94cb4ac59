//! Exact computational tools for generating numbers of group-graded rings.
//!
//! The crate is organised by subject:
//!
//! * [`rings`]: coefficient rings, matrices over them and rank certificates
//!   (`A·B = I_m` witnessing an epimorphism `R^n → R^m`) with their
//!   transformations.
//! * [`groups`]: normal forms and Cayley balls for free, free abelian,
//!   `BS(1,k)` and finite cyclic groups.
//! * [`monoids`]: the monoids `C(n,k)` and `M(n,k,l)` with order decisions
//!   and separating homomorphisms.
//! * [`amenability`]: Følner searches, two-to-one injection searches by
//!   max-flow, equidecomposition checks, `BS(1,k)` subset witnesses.
//! * [`translation`]: translation rings `T_G(X,R)`, rank collapse matrices and
//!   certificate compression over Følner sets.
//! * [`graded`]: crossed systems and crossed products, strong grading checks,
//!   endomorphism-ring gradings and the block embedding of freely graded rings.
//! * [`algebras`]: rewriting engines for Leavitt algebras `L(1,n)` and
//!   generalized Weyl algebras.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod algebras;
pub mod amenability;
pub mod error;
pub mod graded;
pub mod groups;
pub mod monoids;
pub mod rings;
pub mod translation;

pub use error::{Error, Result};
