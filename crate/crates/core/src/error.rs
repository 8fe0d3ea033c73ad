use thiserror::Error;

use crate::complex::VertexId;

/// Every failure the library can report. Variants map one-to-one onto the
/// stable numeric codes exported over the C ABI (see [`Error::code`]).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0:?} unreachable within budget")]
    Unreachable(VertexId),
    #[error("query near window boundary: {0}")]
    BoundaryUnsafe(String),
    #[error("not a simplex: {0:?}")]
    NotASimplex(Vec<VertexId>),
    #[error("layer {0} is empty")]
    EmptyLayer(u32),
    #[error("directed geodesic construction failed at step {step}: {reason}")]
    ConstructionFailed { step: usize, reason: String },
    #[error("condition violated at index {index}: {reason}")]
    ConditionViolated { index: usize, reason: String },
    #[error("malformed thickness profile: {0}")]
    MalformedProfile(String),
    #[error("no thickness-realizing chain for interval ({j},{k})")]
    NoRealizingChain { j: u32, k: u32 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("region is not flat: {0}")]
    NotFlat(String),
    #[error("search budget exhausted")]
    Timeout,
    #[error("cycle admits no disk filling")]
    NoFilling,
    #[error("not a simplex of the disk: {0}")]
    NotASimplexOfDisk(String),
    #[error("degenerate domain")]
    DegenerateDomain,
    #[error("point outside domain: {0}")]
    OutsideDomain(String),
    #[error("path does not cross layer {0}")]
    NoCrossing(u32),
    #[error("no vertex geodesic through the simplices: {0}")]
    NoSelection(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("isometry is not translation-like")]
    NotTranslationLike,
    #[error("no stable central segment across truncations")]
    NoStableSegment,
    #[error("instance is not plane-backed")]
    NotPlaneBacked,
    /// `line` is 0 when the problem is not tied to one line.
    #[error("{}", parse_message(*.line, .msg))]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
    #[error("task {task} failed: {reason}")]
    TaskFailed { task: String, reason: String },
}

impl Error {
    /// Stable numeric code, shared with the C ABI. Zero is reserved for success.
    pub fn code(&self) -> i32 {
        match self {
            Error::Unreachable(_) => 1,
            Error::BoundaryUnsafe(_) => 2,
            Error::NotASimplex(_) => 3,
            Error::EmptyLayer(_) => 4,
            Error::ConstructionFailed { .. } => 5,
            Error::ConditionViolated { .. } => 6,
            Error::MalformedProfile(_) => 7,
            Error::NoRealizingChain { .. } => 8,
            Error::PreconditionViolated(_) => 9,
            Error::NotFlat(_) => 10,
            Error::Timeout => 11,
            Error::NoFilling => 12,
            Error::NotASimplexOfDisk(_) => 13,
            Error::DegenerateDomain => 14,
            Error::OutsideDomain(_) => 15,
            Error::NoCrossing(_) => 16,
            Error::NoSelection(_) => 17,
            Error::Inconclusive(_) => 18,
            Error::NotTranslationLike => 19,
            Error::NoStableSegment => 20,
            Error::NotPlaneBacked => 21,
            Error::Parse { .. } => 22,
            Error::Io(_) => 23,
            Error::TaskFailed { .. } => 24,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

fn parse_message(line: usize, msg: &str) -> String {
    match line {
        0 => format!("invalid input: {msg}"),
        n => format!("parse error at line {n}: {msg}"),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
