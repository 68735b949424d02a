//! Exact combinatorics and Gröbner machinery for 2x2 permanental ideals of
//! generic hypermatrices.
//!
//! The crate has two independent halves that check each other:
//!
//! * a combinatorial fast path: signed sets, switch/distance bookkeeping,
//!   explicit Gröbner bases with sign tracking, and minimal-prime
//!   enumeration, all over `{+1, -1}` coefficients;
//! * a brute-force oracle: exact rational sparse polynomials, lexicographic
//!   division, and Buchberger's algorithm.
//!
//! Everything is exact; there is no floating-point arithmetic anywhere.

pub mod cli;
pub mod error;
pub mod gens;
pub mod hyperlattice;
pub mod poly;
pub mod prime;
pub mod signed;

pub use error::{Error, Result};
pub use hyperlattice::{Axes, CollapsedPoint, Lattice, Point, Shape};
pub use poly::{Membership, Monomial, Polynomial, QPolynomial, SignedBinomial};

/// The exact scalar used throughout the oracle.
pub type Rat = num::BigRational;
