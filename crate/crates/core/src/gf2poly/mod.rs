//! Mod-2 polynomial arithmetic and linear algebra over GF(2).
//!
//! [`XtPoly`] is the two-variable target ring of the collapse maps,
//! [`WPoly`] the Stiefel-Whitney polynomial ring, [`Gf2Matrix`] the row
//! spaces built from both.

mod bits;
mod matrix;
mod partitions;
mod wpoly;
mod xtpoly;

pub use bits::BitVec;
pub use matrix::{Gf2Matrix, Insert};
pub use partitions::{partitions, Partitions};
pub use wpoly::{WMonomial, WPoly};
pub use xtpoly::{format_xt, XtPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("incompatible operands: (xweight, cap) {left:?} vs {right:?}")]
    Mismatch { left: (usize, usize), right: (usize, usize) },
    #[error("constant term is zero, no inverse")]
    NotInvertible,
    #[error("degree {n} exceeds cap {cap}")]
    BeyondCap { n: usize, cap: usize },
    #[error("row has length {got}, expected {expected}")]
    RowLength { expected: usize, got: usize },
    #[error("w_0 is not a generator")]
    ZeroPart,
}
