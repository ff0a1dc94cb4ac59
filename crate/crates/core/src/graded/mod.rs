//! Group-graded rings: crossed products, strong-grading checks, the graded
//! endomorphism-ring construction and the block embedding of freely graded
//! rings.

pub mod crossed;
mod endo;
mod linear;
mod psi;
mod strong;

pub use endo::{endo_graded_construction, EndoGradedReport, EndoGradedRing, MAX_ENDO_SIZE};
pub use psi::{psi_embedding_check, rho0, FreelyZGraded, PsiImage, PsiReport};
pub use strong::{
    strong_grading_check, GradedSpans, StrongGradingEntry, StrongGradingReport, StrongWitness, DEFAULT_COEFF_BOUND,
};
