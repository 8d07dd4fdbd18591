//! A decoding laboratory for the toric code: min-sum, normalized min-sum
//! and sum-product message passing, the decoding-tree oracle, degeneracy
//! and blindness analysis, the stabilizer-blowup pre-processor, and
//! exhaustive / Monte-Carlo experiment harnesses.

pub mod blindness;
pub mod blowup;
pub mod decoder;
pub mod degeneracy;
mod error;
pub mod lattice;
pub mod montecarlo;
pub mod tanner;
pub mod tree;

pub use error::{Error, Result};

/// Exact min-sum message scalar (odd integers when γ = 1).
pub type MsValue = i64;
/// Scalar for normalized min-sum (exact dyadics) and sum-product.
pub type SoftValue = f64;
