//! Poisson structures, Hamiltonian lifts, cocycle and bracket-table checks,
//! and exact linear algebra.

mod check;
mod cocycle;
mod family;
mod linalg;
mod poisson;

use thiserror::Error;

use crate::diffpoly::DiffPolyError;
use crate::jetspace::JetError;

pub use check::{CheckOutcome, Component, Identity, Witness};
pub use cocycle::{check_cocycle, cocycle_identity, GradedOperator, LinearOperatorSpec};
pub use family::{check_bracket_table, graded_homomorphism_cases, BracketCase, Gen, GeneratorFamily};
pub use linalg::{det_rational, determinant, pfaffian, solve_exact};
pub use poisson::{contract, ham_field, nabla, poisson, PoissonStructure};

#[derive(Debug, Error)]
pub enum LieError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Poly(#[from] DiffPolyError),
    #[error("symbol {symbol} is outside chart {chart}")]
    OutsideChart { symbol: String, chart: String },
    #[error("grade {grade} is outside family {family}")]
    GradeOutsideFamily { family: String, grade: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("operator coefficient depends on its operand: {0}")]
    OperandJet(String),
    #[error("expression is not linear in {0}")]
    NotLinear(String),
    #[error("odd dimension {0}")]
    OddDimension(usize),
    #[error("matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("singular system")]
    Singular,
    #[error("inconsistent system")]
    Inconsistent,
}
