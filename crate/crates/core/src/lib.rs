//! Exact jet calculus for heavenly equations and their SDiff(2) symmetry
//! algebras.
//!
//! * [`diffpoly`]: differential Laurent polynomials over ℚ.
//! * [`jetspace`]: charts, total derivatives, vector fields, prolongation.
//! * [`liealg`]: Poisson structures, Hamiltonian fields, cocycle and
//!   bracket-table checks, Pfaffians and exact linear solves.
//! * [`plebanski`]: concrete generator families, invariants, the invariant
//!   frame and the named verification suites.
//! * [`expr`]: expression parser and printer.
//! * [`report`]: structured suite results.

pub mod diffpoly;
pub mod expr;
pub mod jetspace;
pub mod liealg;
pub mod plebanski;
pub mod report;
pub mod sample;

pub use diffpoly::{DiffPoly, Monomial, Rational, Sym};
pub use expr::{parse_poly, parse_symbol, ExprError};
pub use jetspace::{chart, lie_bracket, prolong, Chart, ProlongedField, VectorField};
