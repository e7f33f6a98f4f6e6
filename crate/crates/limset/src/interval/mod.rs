//! Exact piecewise-polynomial interval dynamics: rational evaluation and
//! orbits, preimages of affine systems, negative limit sets at box
//! resolution, box-graph outer approximation of the chain recurrent set, and
//! a machine-checked shadowing falsification.
//!
//! Everything arithmetic here is exact: evaluation, preimage solving, range
//! analysis and pseudo-orbit verification carry no tolerance parameters.
//! Only the box projections (grid width, fattening, tree depth) are
//! approximate, and results quote those parameters.

mod boxes;
mod falsify;
mod map;
mod rat;

pub use boxes::{
    box_graph, chain_recurrent_outer, is_box_ict, neg_limit_a1, neg_limit_trajectories, BoxGraph,
    BoxGrid, BoxReport, NegLimitMode,
};
pub use falsify::{falsify_shadowing, FalsificationCert, Obligation};
pub use map::{
    verify_pseudo_orbit_num, NumVerdict, Piece, PiecewiseMap, PreimageSet, PseudoOrbitNum,
    RatInterval,
};
pub use rat::Rat;
