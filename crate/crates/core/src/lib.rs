//! Exact rational toolkit for linear monotone relations on `ℝⁿ × ℝⁿ`.
//!
//! The crate classifies linear subspaces and finitely generated
//! double-cones (monotone, skew, representable, NI, unique, maximal),
//! evaluates their Fitzpatrick functions in closed form, and builds maximal
//! monotone extensions. All certified answers use exact rationals.

#![no_std]

extern crate alloc;

pub mod doublecone;
pub mod error;
pub mod gossez;
pub mod linsub;
pub mod matrix;
pub mod pairing;
pub mod random;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod subspace;

pub use error::Error;
pub use linsub::FitzValue;
pub use matrix::{Inertia, Mat};
pub use pairing::Point;
pub use report::{ClassificationReport, Tier, Verdict, Witness};
pub use sampling::ProbePlan;
pub use scalar::Scalar;
pub use subspace::Subspace;
