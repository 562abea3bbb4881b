//! Exact arithmetic for the ring `A` of degree-zero stable operations in
//! p-local complex K-theory.
//!
//! The ring is presented through the operation `Ψ^q` for an integer `q`
//! primitive modulo `p²`. Products of the linear factors `(Ψ^q - q_i)`, with
//! `q_i` running through the node sequence `q^0, q^1, q^-1, q^2, ...`, give
//! the elements `Φ_n`, and every operation is an infinite `Z_(p)`-combination
//! of the `Φ_n`. Everything here is computed exactly over arbitrary-precision
//! rationals; truncation at a filtration level stands in for the completed
//! ring.
//!
//! Crate layout:
//! - [`arith`] — p-local rationals, valuations, Gaussian binomials, and the
//!   ring configuration (prime, primitive base, split/non-split variant).
//! - [`linalg`] — dense exact matrices and Smith normal form over `Z_(p)`.
//! - [`opring`] — the operation ring itself: Θ polynomials, the Φ basis,
//!   structure constants, Adams expansions, and congruence checkers.
//! - [`modules`] — finitely presented discrete modules with a `Ψ^q` action,
//!   discreteness and Bousfield-condition checkers, and module combinators.
//! - [`cofree`] — the cofree functor `U = Hom^cts(A, -)`, its adjunction,
//!   and the constructive four-term exact sequence.
//! - [`corpus`] — seeded random module generation for property suites.

pub mod arith;
pub mod cofree;
pub mod corpus;
pub mod linalg;
pub mod modules;
pub mod opring;

mod error;

pub use error::{Error, Result};
