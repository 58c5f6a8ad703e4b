//! The book under `book/` rendered as rustdoc, so that `cargo test` runs
//! every code block in it as a doctest. Each module below is one chapter,
//! included verbatim; if a chapter's example rots, this crate fails to test.
//!
//! Build the browsable version with `mdbook build book/`.

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-predicates.md")]
pub mod exact_predicates {}

#[doc = include_str!("../../../book/src/enumeration.md")]
pub mod enumeration {}

#[doc = include_str!("../../../book/src/crossing-identity.md")]
pub mod crossing_identity {}

#[doc = include_str!("../../../book/src/rotation-lemma.md")]
pub mod rotation_lemma {}

#[doc = include_str!("../../../book/src/convex-chains.md")]
pub mod convex_chains {}

#[doc = include_str!("../../../book/src/cardano.md")]
pub mod cardano {}

#[doc = include_str!("../../../book/src/bound-pipeline.md")]
pub mod bound_pipeline {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
