//! Mod-2 characteristic-number engine for obstructions to fold, cusp,
//! Morin and corank-1 maps.
//!
//! Layers, bottom up: [`parity2`] (binomial parity and 2-adic valuations),
//! [`gf2poly`] (polynomials and row spaces over GF(2)), [`dold`] (total
//! Steenrod squares, Dold relations and their collapsed images),
//! [`obstruct`] (decision procedures), [`cli`] (command-line front end).

pub mod cli;
pub mod dold;
pub mod gf2poly;
pub mod obstruct;
pub mod parity2;

/// Recorded in checkpoints; bump when results could change.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
