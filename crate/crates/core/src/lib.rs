//! Exact enumeration of the Ising model on cubic maps of arbitrary genus.
//!
//! The central objects are the *Ising partition polynomials* `I_{n,g}`.
//! For `2n` vertices (hence `3n` edges) and genus `g`, the polynomial
//! `I_{n,g}(nu_b, nu_w)` sums, over every labelled cubic map of genus `g`
//! on the half-edge set `{0, .., 6n-1}` and over all `2^{2n}` black/white
//! vertex colourings, the weight `nu_b^a nu_w^b`, where `a` counts edges
//! with both endpoints black and `b` counts edges with both endpoints
//! white.  Mixed edges carry weight 1.
//!
//! Two independent routes compute these polynomials:
//!
//! * [`oracle`] enumerates permutation pairs directly (feasible for
//!   `n <= 3`) — the ground truth for small sizes;
//! * [`solver`] integrates a KP-derived partial differential equation for
//!   the generating series grade by grade, reaching hundreds of edges.
//!
//! The generating series solved for is
//! `I(t; nu_b, nu_w, s) = sum_n sum_g t^{3n} s^g I_{n,g} / (6n)!`,
//! a power series in `t` (one power per edge) whose coefficients are
//! polynomials ([`Poly`]) in the two vertex weights and the genus marker
//! `s`.  Everything is exact: coefficients are arbitrary-precision
//! rationals, and every solved grade is verified against the defining
//! equation before being accepted.
//!
//! Specialised counting sequences (one-colour maps, one-face maps, planar
//! maps, and a rational parametrisation of the planar generating
//! function) live in [`special`] and [`param`]; the change of variables
//! linking the series to bipartite map enumeration lives in [`bipartite`];
//! persistent integer coefficient tables live in [`table`].

pub mod bipartite;
pub(crate) mod grid;
pub mod ops;
pub mod oracle;
pub mod param;
pub mod poly;
pub mod rational;
pub mod series;
pub mod solver;
pub mod special;
pub mod table;

#[doc(hidden)]
pub mod testing;

pub use poly::{Monomial, Poly};
pub use rational::{Int, Rational};
pub use series::TSeries;
pub use solver::{Mode, SolveState};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Two truncated series with different truncation orders were combined.
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    /// A series coefficient beyond the stored truncation order was requested.
    #[error("grade {grade} exceeds truncation order {trunc}")]
    GradeOutOfRange { grade: usize, trunc: usize },

    /// A solver query needs more edges than have been computed.
    #[error("requested {requested} edges but only {present} are computed")]
    MissingDepth { requested: usize, present: usize },

    /// Genus outside the admissible range `0..=floor((n+1)/2)`.
    #[error("genus {g} out of range for {n} vertex pairs")]
    GenusOutOfRange { n: usize, g: usize },

    /// An algebraic identity that must hold exactly failed to hold.
    #[error("verification failed: {0}")]
    Verification(String),

    /// A supposedly exact integer division left a remainder.
    #[error("non-integer value in {0}")]
    NonInteger(String),

    /// Permutation-pair validation failed.
    #[error("invalid permutation pair: {0}")]
    InvalidPermutation(String),

    /// Exhaustive enumeration requested beyond the feasible range.
    #[error("enumeration infeasible for n = {0} (supported: 1 <= n <= 3)")]
    InfeasibleEnumeration(usize),

    /// The planar parametrisation degenerates at the requested point.
    #[error("parametrisation degenerate at ({0}, {1}): {2}")]
    DegenerateParametrisation(String, String, String),

    /// No direction candidate survived branch selection.
    #[error("no parametrisation branch matched the combinatorial series at ({0}, {1})")]
    BranchSelection(String, String),

    /// A persisted coefficient table failed validation.
    #[error("corrupt coefficient table: {0}")]
    CorruptTable(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
