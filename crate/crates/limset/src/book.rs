//! Doc-test bridge: every code block in the guide compiles and runs under
//! `cargo test --doc`, so the book cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/shift-spaces.md")]
mod shift_spaces {}

#[doc = include_str!("../../../book/src/window-sets.md")]
mod window_sets {}

#[doc = include_str!("../../../book/src/chain-transitivity.md")]
mod chain_transitivity {}

#[doc = include_str!("../../../book/src/shadowing.md")]
mod shadowing_guide {}

#[doc = include_str!("../../../book/src/realisation.md")]
mod realisation {}

#[doc = include_str!("../../../book/src/interval-maps.md")]
mod interval_maps {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli_guide {}
