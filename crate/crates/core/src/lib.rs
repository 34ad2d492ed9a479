//! Exact tools for complex Hadamard matrices over `{1, −1, i, −i}`.
//!
//! The crate covers the whole pipeline around mutually unbiased complex
//! Hadamard matrices:
//!
//! * [`algebra`]: Gaussian integers, unit matrices and exact gram products;
//! * [`hadamard`]: Hadamard predicates, row regularity, dephasing;
//! * [`relations`]: unbiased, weakly unbiased, modularly homogeneous and
//!   special pairs, and two-squares decompositions;
//! * [`doubling`]: the real doubling `H ↦ H'` of twice the order;
//! * [`search`]: exhaustive mate search and tiny-order classification;
//! * [`bases`]: unbiased complex and real bases built from pairs;
//! * [`format`] and [`corpus`]: the compact text notation and the bundled
//!   reference matrices.
//!
//! ```
//! use muchkit::format::parse_matrix;
//! use muchkit::relations::are_unbiased;
//!
//! let h = parse_matrix("11\n1-").unwrap();
//! let k = parse_matrix("1i\ni1").unwrap();
//! assert!(are_unbiased(&h, &k).unwrap());
//! ```

pub mod algebra;
pub mod bases;
pub mod corpus;
pub mod doubling;
pub mod error;
pub mod format;
pub mod hadamard;
pub mod relations;
pub mod search;

#[cfg(test)]
mod test_support;

pub use algebra::{GaussInt, IntMatrix, UnitEntry, UnitMatrix};
pub use error::{Error, Result};
