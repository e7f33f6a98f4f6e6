//! Alphabets, words, finitely described points of one- and two-sided shift
//! spaces, shifts of finite type and their block graphs.
//!
//! Everything here is immutable after construction and all operations are
//! pure, so values can be shared freely across threads.

mod alphabet;
mod graph;
mod point;
mod sft;
mod word;

pub use alphabet::{Alphabet, Symbol};
pub(crate) use graph::tarjan;
pub use graph::{block_graph, BlockGraph};
pub use point::{
    Growth, LeftTail, Ray, SeqPoint, SymbolicPoint, TailForm, Template, TwoSidedPoint,
};
pub use sft::Sft;
pub use word::Word;
