//! Knot diagrams, exact finite-type invariants and alternating-sum brackets
//! over crossing changes, finger moves and interdependent moves.
#![no_std]

extern crate alloc;

pub mod bracket;
pub mod braid;
pub mod circlegraph;
pub mod clasper;
pub mod diagram;
pub mod error;
pub mod gauss;
pub mod generate;
pub mod geometry;
pub mod invariants;
pub mod moves;
pub mod poly;
pub mod simplify;

pub use diagram::PlanarDiagram;
pub use error::{Error, Result};
pub use poly::LaurentPoly;
