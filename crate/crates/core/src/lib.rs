//! Period analysis for inversive congruential generators over Z_{p^e}.
//!
//! The generator under study iterates `x -> a * x^{-1} + b` on the residue
//! ring Z_{p^e} (odd prime `p`, exponent `e`), mapping non-units to `b`.
//! Every orbit is eventually periodic; this crate computes those eventual
//! periods three independent ways and cross-checks them:
//!
//! * [`iprng`] — direct orbit simulation (the oracle),
//! * [`analyzer`] — closed-form prediction from the characteristic
//!   polynomial `t^2 - b*t - a` of the companion linear recurrence,
//! * [`analyzer::contributions`] — closed-form counts of how many
//!   `(a, b, x0)` triples realize each period, without enumerating any.
//!
//! Supporting arithmetic lives in [`zpe`] (the base ring), [`gr2`] (its
//! quadratic unramified extension, used when the characteristic polynomial
//! is irreducible), and [`charpoly`] (root structure classification).
//! [`census`] runs exhaustive sweeps that compare all three sources.

pub mod analyzer;
pub mod census;
pub mod charpoly;
pub mod error;
pub mod gr2;
pub mod iprng;
pub mod zpe;

pub use error::{Error, Result};
