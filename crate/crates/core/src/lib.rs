//! Finite-model engine for the calculus of relations.
//!
//! The crate works over finite carriers `0..n`. It provides:
//!
//! - [`finset`]: relations as dense bit matrices, total functions, and the
//!   finite-set constructions built from them (kernel pairs, image
//!   factorizations, pullbacks, coequalizers, direct and inverse images);
//! - [`ualg`]: finite algebras given by flat operation tables, terms,
//!   subalgebras, congruences and clone generation;
//! - [`permutability`]: congruence permutability checks, Mal'tsev and
//!   quaternary (Goursat) term search, identity schemas and relation sweeps;
//! - [`exactness`]: checkers for exact forks, the Barr–Kock square, regular and
//!   Goursat pushouts, and the denormalized 3×3 lemma;
//! - [`builders`]: the standard example algebras, each checked against its
//!   axioms on construction.
//!
//! Composition is written in application order: `compose(r, s)` relates `x` to
//! `z` when `x r y` and `y s z`, which is `s ∘ r` in the usual notation.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod builders;
pub mod error;
pub mod exactness;
pub mod finset;
pub mod permutability;
pub mod ualg;

pub use error::{Error, Result};
pub use finset::{Carrier, FinFn, Rel, RelFlags};
pub use ualg::{Algebra, CloneElement, CloneTable, Congruence, Signature, Term};
