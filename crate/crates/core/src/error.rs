use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::diagram::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid diagram: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("unknown arc label {0}")]
    UnknownArc(u32),
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("expected a knot, diagram has {0} components")]
    NotAKnot(usize),
    #[error("gauss code is not realizable: {0}")]
    NonRealizable(String),
    #[error("crossing budget exceeded: {crossings} > {budget}")]
    CrossingBudget { crossings: usize, budget: usize },
    #[error("term budget exceeded: {terms} > {budget}")]
    TermBudget { terms: usize, budget: usize },
    #[error("incompatible move groups {0} and {1}: supports overlap")]
    Incompatible(usize, usize),
    #[error("unknown reroute {0}")]
    UnknownReroute(u32),
    #[error("drawing not in general position: {0}")]
    Degenerate(String),
    #[error("projection hygiene violated: {0}")]
    Hygiene(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal check failed: {0}")]
    CheckFailed(String),
    #[error("invalid clasper: {0}")]
    InvalidClasper(String),
}

pub type Result<T> = core::result::Result<T, Error>;
