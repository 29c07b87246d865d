//! Worst-case analysis of the greedy MAX algorithm for `k`-independent sets
//! in loopless multigraphs.
//!
//! MAX repeatedly deletes a vertex of maximum degree until the remaining
//! multigraph has maximum degree below `k`. For a degree sequence `D`,
//! [`omega::b`] computes `b_k(D)`, the smallest output size of MAX over every
//! multigraph with degree sequence `D` and every tie-breaking, and
//! [`graph::construct_worst_case`] builds a multigraph and deletion order that
//! attain it.
//!
//! The bound is specific to multigraphs. For simple graphs the analogous
//! procedure does not give a valid lower bound.
//!
//! Modules:
//! - [`multiset`]: degree sequences, conjugate profiles, Ferrers rendering.
//! - [`omega`]: decrement sequences, Ω, and `b_k`.
//! - [`order`]: elementary steps, the order `≼`, pseudo-reductions.
//! - [`graph`]: multigraphs, MAX, exhaustive worst case, witnesses.
//! - [`covering`]: lower bounds on pair-covering numbers.
//! - [`loops`]: the loop-multigraph variant.

pub mod covering;
pub mod error;
pub mod graph;
pub mod loops;
pub mod multiset;
pub mod omega;
pub mod order;

pub use error::{Error, Result};
pub use multiset::{DegreeSequence, SigmaProfile};
