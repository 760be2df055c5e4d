use thiserror::Error;

use crate::graph::Edge;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants are grouped loosely by the module that raises them; the CLI maps
/// them onto exit codes through [`Error::class`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // construction and IO
    #[error("self-loop at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("malformed graph6 at byte {position}: {reason}")]
    MalformedGraph6 { position: usize, reason: String },
    #[error("graph6 order {0} exceeds the supported bound {1}")]
    UnsupportedSize(u64, u64),
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("malformed vector literal: {0}")]
    MalformedVector(String),

    // vectors
    #[error("the zero vector cannot be an eigenvector")]
    ZeroVector,
    #[error("empty vector")]
    EmptyVector,
    #[error("valuation is not over {{-1,+1}} with both signs present")]
    NotBivalentAlphabet,
    #[error("valuation is not over {{-1,0,+1}}")]
    NotTrivalentAlphabet,
    #[error("valuation with eigenvalue {0} is not a Laplacian eigenpair of the graph")]
    NotACertificate(i64),

    // numerics
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    // search
    #[error("graph on {0} vertices exceeds the bound {1}")]
    TooLarge(usize, usize),

    // transforms
    #[error("vertices {0} and {1} carry different values")]
    UnequalValues(usize, usize),
    #[error("both endpoints are vertex {0}")]
    SameVertex(usize),
    #[error("new edge {0:?} touches a support vertex")]
    EdgeTouchesSupport(Edge),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertices {0} and {1} do not carry opposite values")]
    NotOppositeValues(usize, usize),
    #[error("edge endpoint {0} is a soft vertex")]
    ZeroEndpoint(usize),
    #[error("vertices {0} and {1} do not form a soft square: {2}")]
    NotASoftSquare(usize, usize, String),
    #[error("edge ({0}, {1}) already present")]
    EdgeAlreadyPresent(usize, usize),
    #[error("support has {plus} positive and {minus} negative entries")]
    UnbalancedSupport { plus: usize, minus: usize },
    #[error("not an alternate perfect matching: {0}")]
    NotAlternatePerfect(String),
    #[error("matching pair ({0}, {1}) is already an edge")]
    EdgeCollision(usize, usize),
    #[error("matching pair ({0}, {1}) is not an edge")]
    MissingEdge(usize, usize),
    #[error("no alternate perfect matching is available")]
    MatchingUnavailable,

    // characterizations
    #[error("graph is not a tree")]
    NotATree,
    #[error("not a perfect matching of the tree: {0}")]
    NotPerfectMatching(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// A well-formed request whose precondition or verdict failed.
    Domain,
    /// Input that could not be parsed.
    Malformed,
    /// A declared size or resource bound was exceeded.
    Resource,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::MalformedGraph6 { .. }
            | Error::MalformedVector(_)
            | Error::InvalidSize(_)
            | Error::LengthMismatch { .. } => {
                ErrorClass::Malformed
            }
            Error::UnsupportedSize(..) | Error::TooLarge(..) | Error::NoConvergence(_) => {
                ErrorClass::Resource
            }
            _ => ErrorClass::Domain,
        }
    }

    /// Variant name, stable across releases; used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::LoopEdge(_) => "LoopEdge",
            Error::VertexOutOfRange(..) => "VertexOutOfRange",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::InvalidSize(_) => "InvalidSize",
            Error::MalformedGraph6 { .. } => "MalformedGraph6",
            Error::UnsupportedSize(..) => "UnsupportedSize",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::MalformedVector(_) => "MalformedVector",
            Error::ZeroVector => "ZeroVector",
            Error::EmptyVector => "EmptyVector",
            Error::NotBivalentAlphabet => "NotBivalentAlphabet",
            Error::NotTrivalentAlphabet => "NotTrivalentAlphabet",
            Error::NotACertificate(_) => "NotACertificate",
            Error::NotSymmetric(..) => "NotSymmetric",
            Error::NoConvergence(_) => "NoConvergence",
            Error::TooLarge(..) => "TooLarge",
            Error::UnequalValues(..) => "UnequalValues",
            Error::SameVertex(_) => "SameVertex",
            Error::EdgeTouchesSupport(_) => "EdgeTouchesSupport",
            Error::NotAnEdge(..) => "NotAnEdge",
            Error::NotOppositeValues(..) => "NotOppositeValues",
            Error::ZeroEndpoint(_) => "ZeroEndpoint",
            Error::NotASoftSquare(..) => "NotASoftSquare",
            Error::EdgeAlreadyPresent(..) => "EdgeAlreadyPresent",
            Error::UnbalancedSupport { .. } => "UnbalancedSupport",
            Error::NotAlternatePerfect(_) => "NotAlternatePerfect",
            Error::EdgeCollision(..) => "EdgeCollision",
            Error::MissingEdge(..) => "MissingEdge",
            Error::MatchingUnavailable => "MatchingUnavailable",
            Error::NotATree => "NotATree",
            Error::NotPerfectMatching(_) => "NotPerfectMatching",
        }
    }
}
