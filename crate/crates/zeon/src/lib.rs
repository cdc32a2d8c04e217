//! Functions of commuting nilpotent variables (η-functions) and the
//! qubit-entanglement toolkit built on top of them.
//!
//! An η-function of `n` variables is stored as a dense table of `2^n`
//! complex coefficients indexed by subsets of `{1..n}`; bit `i-1` of the
//! index marks the presence of `η_i`.

pub mod algebra;
pub mod calculus;
pub mod combinat;
pub mod dynamics;
pub mod entangle;
mod error;
pub mod hilbert;
pub mod linalg;

pub use algebra::{SubsetIndex, Zeon, ZeonContext, C64, DEFAULT_TOL, MAX_VARS};
pub use error::ZeonError;
pub use linalg::CMatrix;

pub type Result<T> = std::result::Result<T, ZeonError>;
