//! Noncommutative polynomials over [`Scalar`](crate::coeff::Scalar) and the
//! rewrite systems of `Fun_q(SU(2))` and `U_q(su(2))`.
//!
//! Rules are derived from the defining relations by closing under `*` and
//! under conjugation by inverses, then oriented along a weighted
//! degree-lexicographic order. Construction fails if any overlap of two
//! left-hand sides does not resolve, so every [`Presentation`] in use has
//! unique normal forms:
//!
//! * `Fun_q(SU(2))`: `a^m b^j b*^k` or `a*^n b^j b*^k`
//! * `U_q(su(2))`: `k^n e^i e*^j` with `n ∈ ℤ`

mod element;
mod presentation;

pub use element::{Element, Gen, Word};
pub use presentation::{
    funq, uq, GeneratorSpec, OverlapFailure, Presentation, PresentationError, PresentationKind, Rule,
};
pub(crate) use presentation::{join_signed, render_term, Notation};

#[cfg(test)]
mod tests;
