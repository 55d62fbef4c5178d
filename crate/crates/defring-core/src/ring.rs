//! The commutative-ring interface shared by all `Mat2` entry types.
//!
//! Elements carry their own ring context (variable set, truncation cap,
//! modulus), so zero and one are derived from an existing element rather
//! than from a standalone ring object.

use core::fmt;

/// Errors raised by ring-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    /// Inversion of an element that is not a unit of the ring.
    NotInvertible,
    /// Operands belong to different ring instances (variable set, cap,
    /// localization unit or modulus mismatch).
    IncompatibleRings,
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::NotInvertible => write!(f, "element is not invertible"),
            RingError::IncompatibleRings => write!(f, "operands from incompatible rings"),
        }
    }
}

/// A commutative ring element with enough context to produce constants.
pub trait Ring: Clone + PartialEq {
    /// The zero of the ring this element lives in.
    fn zero_like(&self) -> Self;
    /// The one of the ring this element lives in.
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Unit inversion; `Err(NotInvertible)` when the element is not a unit.
    fn try_inv(&self) -> Result<Self, RingError>;
}

impl Ring for crate::coeffs::CycloElem {
    fn zero_like(&self) -> Self {
        Self::ZERO
    }
    fn one_like(&self) -> Self {
        Self::ONE
    }
    fn add(&self, other: &Self) -> Self {
        crate::coeffs::CycloElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        crate::coeffs::CycloElem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        crate::coeffs::CycloElem::mul(self, other)
    }
    fn neg(&self) -> Self {
        crate::coeffs::CycloElem::neg(self)
    }
    fn is_zero(&self) -> bool {
        crate::coeffs::CycloElem::is_zero(self)
    }
    fn try_inv(&self) -> Result<Self, RingError> {
        crate::coeffs::CycloElem::inv(self).map_err(|_| RingError::NotInvertible)
    }
}
