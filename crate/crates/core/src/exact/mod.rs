//! Exact numeric primitives: integer square roots, arbitrary-precision
//! rationals, and surds of the form `coeff * sqrt(radicand)`.

mod isqrt;
mod rational;
mod surd;

pub use isqrt::integer_sqrt_floor;
pub use rational::{ParseRationalError, Rational};
pub use surd::Surd;

use thiserror::Error;

/// Errors raised by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// Division by an exactly zero value.
    #[error("division by zero")]
    DivisionByZero,
    /// Square root of a negative value.
    #[error("square root of negative value")]
    NegativeRadicand,
}
