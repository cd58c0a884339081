//! Exact symbolic computation in the algebras of Weyl type `W(l1, l2, Gamma)`.
//!
//! An algebra is fixed by a [`Signature`]: two nonnegative integers `l1`, `l2`
//! with `l = l1 + l2 > 0` and a finitely generated nondegenerate subgroup
//! `Gamma` of `Q^l` (a [`Lattice`]). Its basis is the set of symbols
//! `x^{alpha, i} d^mu` with `alpha` in `Gamma`, `i` a multi-index supported on
//! the first `l1` positions and `mu` an arbitrary multi-index.
//!
//! The crate is organized as:
//!
//! * [`lattice`]: exact rational linear algebra for `Gamma`, block matrices
//!   and multiplicative characters;
//! * [`algebra`]: multi-indices, monomials, sparse elements, the associative
//!   product, the bracket, derivation actions and filtrations;
//! * [`automorphism`]: the automorphism families, normal-form composition,
//!   randomized verification and decomposition of automorphisms;
//! * [`classification`]: isomorphism testing, faithfulness witnesses and
//!   ad-behavior classification with growth probes;
//! * [`sample`]: seeded random generation of test data;
//! * [`json`]: the JSON exchange formats.

pub mod algebra;
pub mod automorphism;
pub mod classification;
pub mod error;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod sample;

pub use algebra::{Element, Monomial, MultiIndex, Signature};
pub use error::{Result, WeylError};
pub use lattice::{BlockMatrix, Character, Lattice};
pub use linalg::Matrix;
pub use rational::Rational;
