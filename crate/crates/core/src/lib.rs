//! Exact symbolic spray geometry on tangent bundles and rational Lie
//! algebra analysis.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod expr;
pub mod geometry;
pub mod liealg;
pub mod numeric;
pub mod report;
pub mod spray;
pub mod symmetry;

pub use error::{Error, Result};
pub use report::{Check, Report, Status};
