//! Griesmer codes from projective geometry.
//!
//! A linear `[n, k, d]_q` code is handled as a multiset of points in
//! PG(k-1, q). This crate builds the arc-and-lines codes `c1` and `c2`,
//! takes their projective duals, punctures those along disjoint lines and
//! single points, and certifies every result exactly: length, dimension,
//! minimum distance, divisibility and the full hyperplane spectrum. The
//! resulting codes meet the Griesmer bound
//! `n >= sum_{i<k} ceil(d / q^i)` with equality.
//!
//! ```
//! use griesmer::chains::{plan_chain, build_chain, Theorem};
//!
//! let plan = plan_chain(Theorem::One, 4, 6, 2364)?;
//! assert_eq!((plan.s, plan.j), (1, 0));
//! let (_code, report) = build_chain(&plan)?;
//! assert_eq!((report.n, report.d), (3153, 2364));
//! assert!(report.is_griesmer);
//! # Ok::<(), griesmer::Error>(())
//! ```
//!
//! The `book/` directory at the repository root walks through the
//! mathematics chapter by chapter; its code samples are compiled and run as
//! doctests of this crate.

pub mod chains;
pub mod constructs;
pub mod error;
pub mod format;
pub mod gf;
pub mod linalg;
pub mod mcode;
pub mod pg;
pub mod transforms;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub struct Intro;
    #[doc = include_str!("../../../book/src/fields.md")]
    pub struct Fields;
    #[doc = include_str!("../../../book/src/projective.md")]
    pub struct Projective;
    #[doc = include_str!("../../../book/src/multisets.md")]
    pub struct Multisets;
    #[doc = include_str!("../../../book/src/constructions.md")]
    pub struct Constructions;
    #[doc = include_str!("../../../book/src/transforms.md")]
    pub struct Transforms;
    #[doc = include_str!("../../../book/src/chains.md")]
    pub struct Chains;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
