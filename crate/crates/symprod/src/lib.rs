//! Exact-arithmetic symmetric products of connected graded-commutative
//! algebras over the rationals.
//!
//! The library constructs finite symmetric products `SP^n(A)` as signed
//! permutation invariants of tensor powers, computes their Poincare series
//! both by brute-force basis enumeration and by Macdonald's product formula,
//! builds free differential models for symmetric products of spaces, reduces
//! them to minimal form by contractible-pair elimination, and extracts
//! rational cohomology and homotopy groups by exact linear algebra.
//!
//! All arithmetic is over arbitrary-precision rationals; every reported
//! number is exact.

pub mod algebra;
pub mod cdga;
pub mod corpus;
pub mod error;
pub mod limits;
pub mod linalg;
pub mod newton;
pub mod oracle;
pub mod presentation;
pub mod realize;
pub mod scalar;
pub mod series;
pub mod sp;
pub mod verify;

pub use algebra::{Element, GenSet, Generator, Monomial};
pub use cdga::{CdgaModel, DimTable};
pub use error::Error;
pub use limits::Limits;
pub use presentation::Presentation;
pub use realize::AlgebraData;
pub use scalar::Scalar;
pub use series::TruncatedSeries;
pub use sp::{SpContext, SpnElement, SymClass};
