//! Exact computations behind Suzuki's method of special classes.
//!
//! The crate is `no_std` and only needs an allocator. It covers:
//!
//! * [`perm`]: permutations, closure enumeration of small groups, conjugacy
//!   classes, centralizers, normalizers and power maps;
//! * [`cyclo`]: exact cyclotomic numbers in a canonical reduced form;
//! * [`chartab`]: character tables via the Dixon–Schneider method, inner
//!   products and structure constants;
//! * [`suzuki`]: special classes, vanishing lattices, decomposition matrices
//!   and reconstruction of character-table fragments;
//! * [`elim`]: structure-constant equations over reciprocal degrees, exact
//!   projection, congruences and the bounded finishers;
//! * [`gf3mod`]: the 4-dimensional GF(3)-module of `Alt(6)` and its invariant
//!   quadratic form.
//!
//! IO, file formats and the command line live in the companion `suzuki`
//! crate.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod chartab;
pub mod cyclo;
pub mod elim;
pub mod error;
pub mod gf3mod;
pub mod linalg;
pub mod perm;
pub mod suzuki;

pub use error::{Error, Result};
