//! Signed permutations, signed graphs and edge-ordering products in the
//! hyperoctahedral group B_n.
//!
//! Composition convention, used everywhere: the right factor is applied
//! first. An edge ordering `(e_1, ..., e_m)` therefore has product
//! `τ_{e_m} ⋯ τ_{e_1}`, with `e_1` acting first.

pub mod census;
pub mod decide;
pub mod error;
pub mod halgebra;
pub mod ordering;
pub mod sgraph;
pub mod verify;

pub use error::{Error, Result};
