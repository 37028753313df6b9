//! Exact arithmetic in cyclotomic fields ℚ(ζₙ) and linear algebra over them.
//!
//! Every scalar in the crate (character values, fiber actions, entries of
//! 2-morphisms) lives here. Conductors are mixed freely: binary operations
//! work in ℚ(ζ_lcm).

mod linalg;
mod matrix;
mod number;
mod poly;

use thiserror::Error;

pub use linalg::rank_nullspace;
pub use matrix::CycMatrix;
pub use number::{root_of_unity, CycNumber};
pub use poly::{cyclotomic_polynomial, euler_phi};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed conductor {from} into conductor {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
}
