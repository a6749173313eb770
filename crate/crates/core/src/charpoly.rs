//! Root structure of the characteristic polynomial `f(t) = t^2 - b*t - a`.
//!
//! The orbit of the inversive map `x -> a * x^{-1} + b` is governed by the
//! linear recurrence `y_{n+2} = b * y_{n+1} + a * y_n`, so everything about
//! eventual periods reduces to where the roots of `f` live. Classification
//! happens along the discriminant `D = b^2 + 4a`:
//!
//! * `a` divisible by `p` — degenerate, every orbit reaches a fixed point;
//! * `D` a unit square — two roots in Z_{p^e} whose difference is a unit;
//! * `D` a unit non-square — conjugate roots in the quadratic extension;
//! * `D` divisible by `p` — a repeated root modulo `p`.

use crate::error::{Error, Result};
use crate::gr2::{FieldElem, QuadContext};
use crate::zpe::{self, RingContext};

/// Where the roots of `t^2 - b*t - a` live.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharPolyClass {
    /// `a` is divisible by `p`; the map is effectively constant after one step.
    AInP,
    /// Two distinct roots in the base ring, `alpha - beta` a unit.
    Reducible { alpha: u64, beta: u64 },
    /// Conjugate roots `t` and `b - t` in the quadratic extension.
    Irreducible { quad: QuadContext },
    /// Discriminant divisible by `p`: a repeated root `omega = b/2` modulo `p`.
    RepeatedRoot { omega: u64 },
}

/// A classified parameter pair, with the discriminant kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub a: u64,
    pub b: u64,
    pub disc: u64,
    pub class: CharPolyClass,
}

/// Classifies `t^2 - b*t - a` over Z_{p^e}. Requires `p > 3`; the analysis
/// leans on `2` being invertible and on quadratic characters mod `p` that
/// degenerate for tiny primes.
pub fn classify(ctx: &RingContext, a: u64, b: u64) -> Result<CharPoly> {
    if ctx.p() <= 3 {
        return Err(Error::UnsupportedContext { p: ctx.p(), e: ctx.e() });
    }
    let a = ctx.residue(a);
    let b = ctx.residue(b);
    let disc = ctx.add(ctx.mul(b, b), ctx.mul(4, a));
    let class = if !ctx.is_unit(a) {
        CharPolyClass::AInP
    } else if !ctx.is_unit(disc) {
        let half = ctx.inverse(2).expect("2 is a unit for odd p");
        CharPolyClass::RepeatedRoot {
            omega: ctx.mul(b, half) % ctx.p(),
        }
    } else {
        match ctx.sqrt_unit(disc) {
            Ok(s) => {
                // alpha gets the canonical square root, making the labeling
                // deterministic; predictions must not depend on the choice.
                let half = ctx.inverse(2).expect("2 is a unit for odd p");
                CharPolyClass::Reducible {
                    alpha: ctx.mul(ctx.add(b, s), half),
                    beta: ctx.mul(ctx.sub(b, s), half),
                }
            }
            Err(Error::NonResidue(_)) => CharPolyClass::Irreducible {
                quad: QuadContext::new(ctx.clone(), a, b)?,
            },
            Err(other) => return Err(other),
        }
    };
    Ok(CharPoly { a, b, disc, class })
}

impl CharPoly {
    /// Multiplicative order of the root ratio `alpha / beta` after reducing
    /// both roots modulo `p^{e-k}`.
    ///
    /// For the reducible class any `0 <= k < e` is allowed; for the
    /// irreducible class only `k = 0` is meaningful (the roots are not base
    /// ring elements, so there is nothing to reduce coefficientwise that
    /// stays a unit ratio in general use).
    pub fn ratio_order(&self, ctx: &RingContext, k: u32) -> Result<u64> {
        match &self.class {
            CharPolyClass::Reducible { alpha, beta } => {
                let ratio = ctx.mul(*alpha, ctx.inverse(*beta)?);
                if k == 0 {
                    ctx.mult_order(ratio)
                } else {
                    let reduced = ctx.reduced_context(k)?;
                    reduced.mult_order(ctx.reduce(ratio, k)?)
                }
            }
            CharPolyClass::Irreducible { quad } => {
                if k != 0 {
                    return Err(Error::CaseMismatch(
                        "reduced ratio order of extension-ring roots",
                    ));
                }
                let ratio = quad.mul(quad.root(), quad.inverse(quad.conjugate_root())?);
                quad.order(ratio)
            }
            _ => Err(Error::CaseMismatch("ratio of roots")),
        }
    }

    /// Images of the two roots in the residue field: elements of Z_p for the
    /// reducible class, of GF(p^2) for the irreducible one.
    pub fn residue_roots(&self, ctx: &RingContext) -> Result<(FieldElem, FieldElem)> {
        match &self.class {
            CharPolyClass::Reducible { alpha, beta } => Ok((
                FieldElem { r0: alpha % ctx.p(), r1: 0 },
                FieldElem { r0: beta % ctx.p(), r1: 0 },
            )),
            CharPolyClass::Irreducible { quad } => Ok((
                quad.residue_image(quad.root()),
                quad.residue_image(quad.conjugate_root()),
            )),
            _ => Err(Error::CaseMismatch("residue roots")),
        }
    }
}

/// Order of `u = omega1 / omega2` (the ratio of residue roots) in the
/// residue field's unit group, together with the subgroup size cue used by
/// the orbit analysis: membership of a value in the cyclic group generated
/// by `u` is decided by `v^m = 1`.
pub(crate) fn residue_ratio_order(ctx: &RingContext, charpoly: &CharPoly) -> Result<u64> {
    match &charpoly.class {
        CharPolyClass::Reducible { alpha, beta } => {
            let p = ctx.p();
            let u = alpha % p * zpe::pow_mod(beta % p, p - 2, p) % p;
            ctx.order_mod_p(u)
        }
        CharPolyClass::Irreducible { quad } => {
            let (w1, w2) = charpoly.residue_roots(ctx)?;
            let u = quad.field_mul(w1, quad.field_inverse(w2)?);
            quad.field_order(u)
        }
        _ => Err(Error::CaseMismatch("residue root ratio")),
    }
}
