//! Gauss diagrams of virtual knots, their order-one homotopy invariants,
//! and singular based matrices.
//!
//! Four categories of diagrams are handled throughout: closed or long,
//! framed or unframed. See [`diagram::GaussDiagram`] for the text format.

pub mod based_matrix;
pub mod diagram;
pub mod fixtures;
pub mod formal_sum;
pub mod harness;
pub mod invariants;
pub mod poly;

pub use diagram::{Arrow, DiagramError, Framing, GaussDiagram, Kind, Move, Sign};
pub use formal_sum::{ClassKey, FormalSum, Verdict};
pub use poly::LaurentPolynomial;
