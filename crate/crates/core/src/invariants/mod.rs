//! Exact knot invariants: Kauffman bracket, Jones polynomial and the
//! degree-2 and degree-3 finite-type invariants.

pub mod arrows;
pub mod kauffman;
pub mod vassiliev;

pub use kauffman::{jones, kauffman_bracket, DEFAULT_BRACKET_BUDGET};
pub use vassiliev::{fingerprint, fingerprint_with, v2, v3, Fingerprint};
