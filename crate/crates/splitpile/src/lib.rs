//! Chip-firing (abelian sandpile) machinery on complete split graphs.
//!
//! The complete split graph `S(m,n)` consists of a clique on `m` vertices
//! together with `n` extra vertices that are adjacent to every clique vertex
//! but not to each other.  This crate implements the sandpile model on these
//! graphs and the web of bijections that classify its recurrent states:
//!
//! * [`split_graph`] — the graph family itself (vertices, degrees, sinks);
//! * [`sandpile`] — configurations, stabilization, the burning test for
//!   recurrence, and exhaustive enumeration of recurrent states;
//! * [`motzkin`] — Motzkin words, their counting formulas, and standard
//!   Young tableaux of shape `(m, m, 1^h)`;
//! * [`bijections`] — the maps between Motzkin words and weakly decreasing
//!   recurrent configurations, one per sink side;
//! * [`necklace`] — cyclic 3-coloured words and the cut lemma that matches
//!   them with Motzkin words;
//! * [`prufer`] — a two-word Prufer code for spanning trees of `S(m,n)`;
//! * [`parking`] — tiered parking functions, in both the "at least" reading
//!   and the exact-count reading that characterizes recurrence;
//! * [`cli`] — the `splitpile` command-line front end (`enumerate`,
//!   `convert`, `check`, `count`, `tree`, `verify`).
//!
//! The `examples/` directory of this crate is the best starting point: each
//! example is a small runnable tour of one capability (`cargo run --example
//! burning`, `--example clique_sink`, `--example spanning_trees`, ...).

pub mod error;
pub mod split_graph;
pub mod sandpile;
pub mod motzkin;
pub mod bijections;
pub mod necklace;
pub mod prufer;
pub mod parking;
pub mod verify;
pub mod cli;

pub(crate) mod arith;

pub use error::Error;

/// Default cap on the number of objects any exhaustive enumeration is
/// allowed to visit before giving up with [`Error::BudgetExceeded`].
/// Override per call, with `--budget`, or with the `SPLITPILE_BUDGET`
/// environment variable.
pub const DEFAULT_BUDGET: u64 = 2_000_000;
