//! Exact algorithms for integral lattices of hyperbolic signature.
//!
//! The crate is `no_std` (it needs `alloc`) and does all arithmetic with
//! arbitrary precision integers and rationals; nothing is ever rounded.
//!
//! * [`lattice`]: Gram matrices, pairings, signatures.
//! * [`sublattice`]: normal forms, complements, saturation, quotients by an
//!   isotropic vector, overlattice stabilizers and gluing.
//! * [`isometry`]: adapted bases and the commuting family of parabolic
//!   isometries fixing an isotropic vector and a negative definite sublattice.
//! * [`cone`]: positive cone, nef test, wall separation and the face test.
//! * [`rank`]: the rank of the automorphism group fixing an isotropic class.
//! * [`enumerate`]: exhaustive enumeration of short vectors.
#![no_std]
extern crate alloc;

pub mod cone;
pub mod enumerate;
pub mod error;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod named;
pub mod rank;
pub mod sublattice;

pub use error::{Error, Result};
pub use lattice::{Lattice, LatticeVector, Signature};
pub use matrix::{Int, Matrix, Rat};
