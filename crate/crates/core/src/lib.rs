//! Finitely presented graded algebras over exact fields: noncommutative
//! Gröbner bases, minimal graded free resolutions of the trivial module,
//! Betti tables, Hilbert series and Yoneda products.

pub mod freealg;
pub mod gbasis;
pub mod par;
pub mod scalar;
pub mod grading;
pub mod linalg;
pub mod resolution;
pub mod constructions;
pub mod yoneda;
pub mod claims;
pub mod mutation;
