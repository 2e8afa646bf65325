//! Exact and certified computations around pseudo-Anosov dilatations.
//!
//! - [`intpoly`]: integer Laurent polynomials and the LT family.
//! - [`rootloc`]: certified house, Mahler measure and Perron tests.
//! - [`digraph`]: non-negative integer matrices viewed as digraphs.
//! - [`traintrack`]: fat train tracks, folds and folding circuits.
//! - [`fiberedface`]: the magic-manifold specialization pipeline and tables.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod constants;
pub mod digraph;
pub mod error;
pub mod fiberedface;
pub mod intpoly;
pub mod matrix;
pub mod rootloc;
pub mod traintrack;

pub use error::{Error, Result};
pub use intpoly::{lt_polynomial, named_polynomial, ExponentMap, IntLaurentPoly, NamedPoly};
pub use rootloc::{RootEnclosure, Verdict};
