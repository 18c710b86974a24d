#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)] // NaN must fail the range checks; matrix loops index by position
//! Numerics for bilateral grand Lebesgue spaces: generating functions,
//! norms, metric entropy, chaining bounds for suprema of families, and
//! martingale and Fourier harnesses.

pub mod apps;
pub mod chaining;
pub mod entropy;
pub mod error;
pub mod lp;
pub mod psi;
pub mod rng;
mod sup;

pub use error::{Error, Result};
pub use sup::REFINE_TOL;
