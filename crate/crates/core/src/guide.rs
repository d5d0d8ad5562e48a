//! The user guide, one module per book chapter.
//!
//! The same markdown lives in `book/` for mdbook rendering; including it
//! here makes every code block a doctest, so `cargo test --doc` keeps the
//! guide and the library in sync.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/operators.md")]
pub mod operators {}

#[doc = include_str!("../../../book/src/decomposition.md")]
pub mod decomposition {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/oscillator.md")]
pub mod oscillator {}

#[doc = include_str!("../../../book/src/ensembles.md")]
pub mod ensembles {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
