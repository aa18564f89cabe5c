//! Exact coefficient fields and sparse multivariate polynomials.
//!
//! Polynomials know their ambient ring (field and variable count) but not
//! variable names; names live with presentations.

mod field;
mod monomial;
mod polynomial;

pub use field::{Coefficient, FieldSpec};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{PolyDisplay, PolyRing, Polynomial, Term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different ambient rings")]
    AmbientMismatch,
    #[error("coefficient is not in the ambient field")]
    FieldMismatch,
    #[error("expected {expected} coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
}
