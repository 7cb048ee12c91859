//! Exact rational-tangle arithmetic, 2-bridge knot invariants and the
//! n-trivial tangle constructions built on them.

pub mod census;
pub mod conway;
pub mod error;
pub mod extfrac;
pub mod homology;
pub mod matrix;
pub mod oracle;
pub mod polyinv;
pub mod tangle;
pub mod trivial;
pub mod verify;

pub use conway::{ConwaySeq, MirrorMode};
pub use error::{Error, Result};
pub use extfrac::ExtRational;
pub use tangle::{KrebesPair, RationalTangle};
pub use trivial::{RationalKnot, Sign, TwistParams};
