//! Exact arithmetic over Q for a handful of classical arithmetic-geometry
//! computations: cohomology of finite groups from the standard cochain
//! complex, Hilbert symbols and local invariants of quaternion algebras,
//! the Hasse-Minkowski decision for quadratic forms, the Lind-Reichardt
//! Brauer-Manin obstruction, and the Bogomolov central extension.
//!
//! The crate is `no_std` and only needs `alloc`. Every scalar is an exact
//! [`num_bigint::BigInt`] or [`Rational`]; nothing here touches floating point.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod bogomolov;
pub mod brauer;
pub mod cohomology;
mod error;
pub mod lind_reichardt;
pub mod linalg;
pub mod quadform;

pub use arith::{Place, Prime, Rational};
pub use error::{Error, Result};
