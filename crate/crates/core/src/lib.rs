//! Exact invariants of normal surface singularities with a star-shaped
//! resolution graph, up to the Hilbert series and embedding dimension of the
//! graded ring.

pub mod arith;
pub mod embdim;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod param_poly;
pub mod poly;
pub mod seifert;
pub mod series;
pub mod smith;
pub mod upoly;

#[cfg(test)]
mod test_support;

pub use arith::{Int, Rational};
pub use error::{Error, Result};
pub use graph::{GraphInvariants, GroupData, QCycle, StarGraph};
pub use seifert::{Leg, SeifertData};
pub use poly::PoincarePolynomial;
pub use series::SeriesBundle;
