//! Concrete generator families, invariants, the invariant frame, and the
//! named verification suites built from them.

pub mod catalog;
pub mod families;
pub mod frame;
pub mod suites;

use thiserror::Error;

use crate::diffpoly::DiffPolyError;
use crate::jetspace::JetError;
use crate::liealg::LieError;

pub use suites::{verify_all, verify_suite, verify_suites, SUITES};

#[derive(Debug, Error)]
pub enum PlebanskiError {
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    /// The frame is singular at the sampled point; draw another one.
    #[error("singular frame, resample")]
    Resample,
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl From<JetError> for PlebanskiError {
    fn from(e: JetError) -> Self {
        PlebanskiError::Lie(e.into())
    }
}

impl From<DiffPolyError> for PlebanskiError {
    fn from(e: DiffPolyError) -> Self {
        PlebanskiError::Lie(e.into())
    }
}
