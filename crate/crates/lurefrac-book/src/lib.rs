//! Doctest harness for the guide in `book/`: every chapter is included
//! as module documentation so `cargo test --doc` compiles and runs the
//! book's code snippets against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fractional-plants.md")]
pub mod fractional_plants {}

#[doc = include_str!("../../../book/src/frequency-analysis.md")]
pub mod frequency_analysis {}

#[doc = include_str!("../../../book/src/sector-criteria.md")]
pub mod sector_criteria {}

#[doc = include_str!("../../../book/src/multipliers.md")]
pub mod multipliers {}

#[doc = include_str!("../../../book/src/stable-classes.md")]
pub mod stable_classes {}

#[doc = include_str!("../../../book/src/simulation.md")]
pub mod simulation {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
