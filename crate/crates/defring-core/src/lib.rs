//! Exact computational kernel for a framed deformation ring presentation.
//!
//! The ambient object is the power series ring `A = O[[x11, ..., z22]]` in
//! twelve variables together with the matrices
//!
//! ```text
//! X = [[1 + x11, l + x12], [x21, 1 + x22]]   (and Y, Z with m, k)
//! ```
//!
//! and the word `X^2 Y^4 [Y, Z]`, whose entries minus the identity are the
//! relation generators `f11, f12, f21, f22`.  Everything in this crate is
//! exact: coefficients live in the cyclotomic field `Q(zeta_8)` with
//! arbitrary-precision rationals underneath, power series are truncated at a
//! total-degree cap (an honest quotient ring), and arc identities are decided
//! by clearing denominators to polynomial equalities.
//!
//! The crate is `no_std` (with `alloc`); IO, the CLI and report formats live
//! in the companion `defring-verify` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arcs;
pub mod coeffs;
pub mod deform;
pub mod groebner;
pub mod mat2;
pub mod points;
pub mod polyring;
pub mod ring;

pub use coeffs::{CycloElem, Rational, Val};
pub use mat2::Mat2;
pub use polyring::{LocalizedPoly, SparsePoly, TruncSeries, VarSet};
