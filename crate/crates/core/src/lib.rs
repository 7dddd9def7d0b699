//! Exact-arithmetic toolkit for vanishing ideals and degree-reducing Lagrange
//! interpolation on planar node sets: covering-line geometry and tower/lower
//! classifiers, closed-form interpolation bases, the Buchberger-Moller
//! algorithm and its tower-seeded fast path, plus a benchmark harness.

pub mod bases;
pub mod engine;
pub mod error;
pub mod field;
pub mod harness;
pub mod io;
pub mod monomial;
pub mod poly;
pub mod sites;
pub mod solver;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldValue};
pub use monomial::{IndexOrder, Monomial, TermOrder};
pub use poly::Polynomial;
