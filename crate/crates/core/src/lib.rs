//! Constructive solver and independent verifier for uniform odd-cycle
//! factorization problems on complete graphs, complete multipartite graphs,
//! and cycle blow-ups.
//!
//! The crate is organized in two halves that deliberately share no logic:
//!
//! * the *constructions* (`seqs`, `circulant`, `project`, `diffmatrix`,
//!   `cmn`, `compose`) build explicit certificates — lists of 2-factors whose
//!   edges partition the host graph; and
//! * the *verifier* (`verify`) re-derives the host edge multiset from the
//!   graph description alone and checks every claimed certificate bit by bit.
//!
//! Every solver returns [`SolveOutcome`]; a `Solved` outcome carries a
//! [`FactorizationCertificate`] that has already passed the verifier.

pub mod circulant;
pub mod cmn;
pub mod compose;
pub mod model;
pub mod project;
pub mod seqs;
pub mod verify;

pub mod diffmatrix;

pub use cmn::{cmn_feasibility, solve_cmn, CmnRequest, Feasibility, SolveOutcome};
pub use model::{
    canonical_edge, edges_of_spec, CycleSeq, DifferenceSet, DifferenceTriple, Edge,
    FactorizationCertificate, GraphSpec, Metadata, TwoFactor, Vertex,
};
pub use verify::{coverage_of, verify, RejectReason, VerifyReport};

use thiserror::Error;

/// Unified error type for construction-side failures.
///
/// The verifier never produces these; its findings are reported through
/// [`verify::VerifyReport`] so that a bad certificate is data, not a panic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An edge was requested between a vertex and itself.
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    /// Sequence parameters admit no sequence of the requested kind.
    #[error("no {kind} sequence exists for defect {defect}, order {order}")]
    NonexistentSequence {
        kind: &'static str,
        defect: u32,
        order: u32,
    },
    /// A circulant graph was not connected when connectivity was required.
    #[error("circulant on {n} vertices with connection set {set:?} is not connected")]
    NotConnected { n: u32, set: Vec<u32> },
    /// The requested operation is outside the supported parameter range.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A backtracking search gave up after exhausting its node budget.
    #[error("search budget of {budget} nodes exceeded for {what}")]
    SearchBudgetExceeded { what: String, budget: u64 },
    /// Parameters fail a structural precondition (parity, ordering, range).
    #[error("bad parameters: {0}")]
    BadParameters(String),
    /// The second interval form hits its known indivisible case.
    #[error("interval cover has no factorization for n = {n}, w = {w}")]
    UnsupportedInterval { n: u32, w: u32 },
    /// A residue expected to be invertible mod n was not.
    #[error("{value} is not a unit mod {n}")]
    NotAUnit { value: u32, n: u32 },
    /// A quotient matrix fails row-sum or column-content validation.
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    /// Padding a matrix needs the column count and m to share parity.
    #[error("cannot pad a {cols}-column matrix to {m} columns (parity mismatch)")]
    ParityMismatch { cols: u32, m: u32 },
    /// Two difference triples claim the same absolute residue.
    #[error("difference triples overlap on |{0}|")]
    OverlappingDifferences(i64),
    /// A difference triple contains a zero or collapses mod n.
    #[error("invalid difference triple {0:?}: {1}")]
    InvalidTriple([i64; 3], String),
    /// The diagonal spread construction requires gcd(m-1, n) = 1.
    #[error("spread factorization not applicable: gcd({m}-1, {n}) != 1")]
    NotApplicable { m: u32, n: u32 },
    /// An edge of a blown-up cycle graph does not join consecutive levels.
    #[error("edge {0:?} does not join consecutive levels")]
    NonConsecutiveLevels(Edge),
    /// Embedded table data failed its load-time audit.
    #[error("invalid embedded data: {0}")]
    InvalidData(String),
    /// A certificate produced internally failed verification: a bug.
    #[error("internal construction bug for {context}: {reason}")]
    InternalBug { context: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
