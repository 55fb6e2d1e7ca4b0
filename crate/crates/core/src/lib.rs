//! Exact representation theory of the compact supergroups S^{1|1} and
//! SU(1|1).

pub mod cli;
pub mod error;
pub mod grassmann;
pub mod harmonic;
pub mod json;
pub mod liealg;
pub mod matrix;
pub mod reps;
pub mod ring;
pub mod scalars;
pub mod supergroup;
pub mod supermatrix;
pub mod verify;

pub use error::{Error, Result};
