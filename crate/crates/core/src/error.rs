//! Error type shared across the crate.

use std::fmt;

/// Everything that can go wrong while building contexts or running analyses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The claimed prime `p` is not an odd prime.
    NotPrime(u64),
    /// The ring exponent must satisfy `e >= 1`.
    ExponentOutOfRange(u32),
    /// `p^e` exceeds the supported range (products must fit in `u64`).
    ModulusTooLarge { p: u64, e: u32 },
    /// Inversion or order computation was asked of a non-unit.
    NotUnit(u64),
    /// Square root requested of a quadratic non-residue.
    NonResidue(u64),
    /// Reduction `Z_{p^e} -> Z_{p^{e-k}}` needs `0 <= k < e`.
    ReductionOutOfRange { k: u32, e: u32 },
    /// Division by zero in the residue field.
    ZeroElement,
    /// `t^2 - b*t - a` is not irreducible modulo `p`, so it does not
    /// generate a quadratic extension ring.
    ReduciblePolynomial { a: u64, b: u64 },
    /// An operation specific to one root-structure class was invoked on
    /// a classification of a different class.
    CaseMismatch(&'static str),
    /// The closed-form analyzer requires `p > 3` and `e >= 2`.
    UnsupportedContext { p: u64, e: u32 },
    /// An exhaustive sweep would visit more triples than the caller's budget.
    SweepTooLarge { triples: u128, budget: u128 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::NotPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::ExponentOutOfRange(e) => {
                write!(f, "ring exponent must be at least 1, got {e}")
            }
            Error::ModulusTooLarge { p, e } => {
                write!(f, "modulus {p}^{e} exceeds the supported range (must be < 2^31)")
            }
            Error::NotUnit(x) => write!(f, "{x} is not a unit"),
            Error::NonResidue(x) => write!(f, "{x} is not a square"),
            Error::ReductionOutOfRange { k, e } => {
                write!(f, "reduction depth {k} out of range for exponent {e}")
            }
            Error::ZeroElement => write!(f, "zero has no inverse in the residue field"),
            Error::ReduciblePolynomial { a, b } => {
                write!(f, "t^2 - {b}*t - {a} is reducible modulo p")
            }
            Error::CaseMismatch(what) => write!(f, "operation not defined for this class: {what}"),
            Error::UnsupportedContext { p, e } => {
                write!(f, "period analysis requires p > 3 and e >= 2, got p={p}, e={e}")
            }
            Error::SweepTooLarge { triples, budget } => {
                write!(f, "sweep would visit {triples} triples, over the budget of {budget}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
