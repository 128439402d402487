//! Exact computational algebra around the braid group B₃, the modular group
//! SL(2,ℤ), and the automorphism group of the free group F₂.
//!
//! The crate computes with five interlocking presentations of the same
//! circle of groups:
//!
//! * [`words`] — reduced words in a rank-two free group (free reduction,
//!   conjugacy with witnesses, abelianization);
//! * [`intmat`] — 2×2 integer matrices: torsion classification in SL(2,ℤ)
//!   and GL(2,ℤ), the free generators fₙ of the derived subgroup, and
//!   Reidemeister–Schreier rewriting into them;
//! * [`braid3`] — B₃ = ⟨a, b | aba = bab⟩: the normal form
//!   s^ν¹ W(a⁻¹, b) s^ν² cⁿ, the word problem, and conjugacy-minimal shapes;
//! * [`autf2`] — Aut(F₂) through Nielsen's commutator criterion: testing,
//!   decomposition into inner × braid (× dihedral) parts, torsion classes;
//! * [`amalg`] — semidirect products amalgamated over a shared central
//!   subgroup, generically and for the inner ⋊ braid presentation of
//!   Aut⁺(F₂).
//!
//! All arithmetic is exact. Matrix entries are checked 128-bit integers;
//! overflow aborts with a message rather than wrapping.

#![forbid(unsafe_code)]

pub mod amalg;
pub mod autf2;
pub mod braid3;
pub mod intmat;
pub mod words;

pub use amalg::AutAmalgElem;
pub use autf2::EndoF2;
pub use braid3::{BraidNormalForm, BraidWord, ConjCase};
pub use intmat::Mat2;
pub use words::{FreeWord, Letter};
