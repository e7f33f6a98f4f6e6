//! Limit sets of symbolic and interval dynamics, made executable.
//!
//! `limset` computes alpha-, omega- and gamma-limit sets of finitely
//! described points in shift spaces as resolution-indexed window sets,
//! decides internal chain transitivity at finite resolution through block
//! graphs, performs exact shadowing constructions in shifts of finite type,
//! realises internally chain transitive sets as limit sets of full
//! trajectories, and carries an exact-rational toolkit for piecewise
//! polynomial interval maps (negative limit sets, box-graph outer
//! approximations of the chain recurrent set, and a machine-checked
//! shadowing falsification).
//!
//! The guide under `book/` walks through the concepts; its code snippets are
//! compiled as doc-tests, so `cargo test --doc` keeps book and library in
//! sync.
//!
//! All resolution statements are relative to the dyadic metric
//! `d(x, y) = 2^-n`, with n the least (absolute) index where x and y differ:
//! `d(x, y) < 2^-k` iff the points agree on every index of absolute value at
//! most k.

pub mod construct;
pub mod dyadic;
pub mod error;
pub mod gallery;
pub mod interval;
pub mod limits;
pub mod rng;
pub mod shadowing;
pub mod symbolic;

pub use dyadic::Dyadic;
pub use error::{Error, Result};

#[cfg(doctest)]
mod book;
