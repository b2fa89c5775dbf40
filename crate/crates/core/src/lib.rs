//! Numerical laboratory for correlation statistics of Riemann zeta zeros
//! and moments of log zeta on the critical line.

pub mod arithmetic;
pub mod correlations;
pub mod error;
pub mod kernels;
pub mod moments;
pub mod predictions;
pub mod quad;
pub mod report;
pub mod runner;
pub mod special;
pub mod zerodata;
pub mod zetaeval;
pub mod util;

pub use error::{Error, Result};
