//! The user guide, one module per book chapter.
//!
//! Each module's documentation is included verbatim from the matching
//! chapter under `book/src/`, so the rendered book and these API docs
//! stay in lockstep and every code snippet in the book is compiled and
//! run by `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/coverage.md")]
pub mod coverage {}

#[doc = include_str!("../../../book/src/thresholds.md")]
pub mod thresholds {}

#[doc = include_str!("../../../book/src/mutual-coverage.md")]
pub mod mutual_coverage {}

#[doc = include_str!("../../../book/src/comparison.md")]
pub mod comparison {}

#[doc = include_str!("../../../book/src/framework.md")]
pub mod framework {}

#[doc = include_str!("../../../book/src/synthetic.md")]
pub mod synthetic {}

#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
