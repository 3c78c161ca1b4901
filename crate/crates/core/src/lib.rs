//! Folding one-dimensional sequences into multidimensional shapes.
//!
//! A lattice tiling of the integer grid together with a ternary direction
//! defines a walk that orders the cells of the base shape; when the walk
//! covers the whole shape it is a *folding*, and a sequence written along
//! it inherits its combinatorial structure. The crate builds three
//! applications on that machinery:
//!
//! * [`ddc`] — synchronization patterns: folding a B2 (Sidon) sequence
//!   yields dot patterns whose pairwise difference vectors are distinct,
//!   extendable periodically over the whole grid;
//! * [`ecc`] — binary codes over boxes or folded shapes correcting one
//!   error or one 2-burst, with redundancy within one bit of the trivial
//!   floor;
//! * [`pra`] — pseudo-random arrays: m-sequences folded into shapes with
//!   the exactly-once window property.
//!
//! [`geometry`] and [`folding`] hold the exact integer machinery; the
//! predicates there (gcd criteria) agree with the walk on every input.

pub mod ddc;
pub mod ecc;
mod error;
pub mod finite_field;
pub mod folding;
pub mod geometry;
pub mod pra;
pub mod shape_gallery;
pub mod sidon;

pub use error::Error;
pub use folding::{Direction, FoldedRow, Folding};
pub use geometry::{Lattice, Point, Shape, Tiling};
