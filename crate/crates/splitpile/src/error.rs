//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Shape and domain violations are reported eagerly by constructors, so the
/// algorithmic code can assume well-formed inputs throughout.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Both parts of a split graph must be non-empty.
    #[error("invalid split graph S({m},{n}): both parts must be non-empty")]
    InvalidGraph { m: usize, n: usize },

    /// A vertex index fell outside its part.
    #[error("vertex {vertex} does not exist in S({m},{n})")]
    InvalidVertex { vertex: String, m: usize, n: usize },

    /// A configuration (or similar per-vertex vector) does not have one
    /// entry per non-sink vertex of the graph it is used with.
    #[error("shape mismatch: expected {expected_clique}+{expected_independent} heights, got {got_clique}+{got_independent}")]
    ShapeMismatch {
        expected_clique: usize,
        expected_independent: usize,
        got_clique: usize,
        got_independent: usize,
    },

    /// An operation that requires a stable configuration was handed an
    /// unstable one.
    #[error("configuration is not stable: vertex {vertex} has {height} grains but degree {degree}")]
    NotStable {
        vertex: String,
        height: u64,
        degree: u64,
    },

    /// Grain counts exceeded `u64` during stabilization.
    #[error("height overflow while toppling")]
    HeightOverflow,

    /// A character outside the `U`/`D`/`H` alphabet.
    #[error("invalid letter {letter:?}: expected one of 'U', 'D', 'H'")]
    InvalidLetter { letter: char },

    /// A `U`/`D`/`H` string that is not a Motzkin word.
    #[error("not a Motzkin word: {reason}")]
    NotMotzkin { reason: String },

    /// A Motzkin word that fails the "no H before the first D" side
    /// condition required by the independent-sink correspondence.
    #[error("not a DH-Motzkin word: an H occurs before the first D")]
    NotDhMotzkin,

    /// A malformed standard Young tableau.
    #[error("invalid standard Young tableau: {0}")]
    InvalidTableau(String),

    /// A malformed necklace (empty, or letter counts that admit no cut).
    #[error("invalid necklace: {0}")]
    InvalidNecklace(String),

    /// An edge list that is not a spanning tree of the stated split graph.
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    /// A word pair that cannot decode to a spanning tree.
    #[error("invalid Prufer pair: {0}")]
    InvalidPruferPair(String),

    /// A malformed tiered parking instance.
    #[error("invalid parking instance: {0}")]
    InvalidParking(String),

    /// An enumeration would visit more objects than the configured budget.
    #[error("enumeration of {needed} objects exceeds budget of {budget}; raise --budget or SPLITPILE_BUDGET")]
    BudgetExceeded { needed: u128, budget: u64 },

    /// Bad data handed to the CLI (unparseable payloads, inconsistent
    /// dimensions, unknown formats).
    #[error("{0}")]
    InvalidInput(String),
}
