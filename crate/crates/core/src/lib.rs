//! Finite cubic, symmetric and multicubic implication algebras.
//!
//! Every structure is tabulated over dense element indices; law suites walk
//! all tuples (or a fixed-seed sample above [`search::max_exhaustive`]) and
//! report the first counterexample.

pub mod algebra;
pub mod cubic;
pub mod dot;
pub mod envelope;
pub mod fixpoints;
pub mod models;
pub mod multicube;
pub mod report;
pub mod search;
pub mod spec_file;
pub mod suites;
pub mod symmetric;

pub use algebra::{AlgebraError, FinAlgebra};
pub use cubic::CubicAlg;
pub use report::{CheckReport, Status, Witness};
