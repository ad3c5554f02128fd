use thiserror::Error;

use crate::invariants::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid orbit invariants: {0}")]
    Invalid(ValidationReport),

    #[error("violations cannot be normalized away: {0}")]
    NotNormalizable(ValidationReport),

    #[error("nothing to cap: the datum is already closed (t = 0 and empty graph)")]
    NothingToCap,

    #[error("capping bookkeeping failed: {0}")]
    CappingInconsistent(String),

    #[error("formality implemented for closed manifolds only")]
    FormalityClosedOnly,

    #[error("{0} requires a closed datum (t = 0 and empty graph)")]
    NotClosed(&'static str),

    #[error("euler number not defined here: the action has fixed points (use the module action instead)")]
    EulerNumberUndefined,

    #[error("cohomology elements need a closed datum with f > 0")]
    NoFixedCircles,

    #[error("relation ({relation}) of the element presentation fails: {detail}")]
    Relation { relation: u8, detail: String },

    #[error("elements belong to different cohomology contexts")]
    ContextMismatch,

    #[error("element shape does not match context: {0}")]
    Shape(String),
}
