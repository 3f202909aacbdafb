//! Exact computer algebra for injective weight-zero Rota–Baxter operators on
//! `Q[x]`.
//!
//! Every injective weight-zero Rota–Baxter operator on a polynomial ring over
//! a field of characteristic zero has the form `J_a ∘ l_r`: multiply by a
//! nonzero polynomial `r`, then integrate formally from the base point `a`.
//! This crate provides
//!
//! * exact rational scalars and dense univariate polynomials with the three
//!   operators involved (multiplication, derivation, formal integration),
//! * sparse multivariate polynomials for the functional-coordinate system and
//!   its elimination,
//! * operator representations, identity checks and canonicalization of a
//!   truncated operator into its moduli point `(a, r)`,
//! * the group actions on the moduli space and constructive word synthesis
//!   for their transitivity properties.
//!
//! Everything is exact; there is no floating point anywhere. The crate is
//! `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod actions;
pub mod error;
pub mod exactpoly;
pub mod functionals;
pub mod linalg;
pub mod multipoly;
pub mod rat;
pub mod rbops;
pub mod transitivity;

pub use actions::{AutOrbit, Generator, GeneratorKind, Word};
pub use error::{Error, Result};
pub use exactpoly::Poly;
pub use functionals::{Eliminator, FunCoords};
pub use multipoly::{MPoly, Monomial};
pub use rat::Rat;
pub use rbops::{AnalyticOp, TruncOp};
pub use transitivity::ATuple;
