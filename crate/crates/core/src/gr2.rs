//! Arithmetic in the quadratic unramified extension of Z_{p^e}.
//!
//! When `f(t) = t^2 - b*t - a` is irreducible modulo `p`, the quotient
//! Z_{p^e}[t] / (f) is a local ring of order `p^{2e}` in which `f` splits
//! with roots `t` and `b - t`. Elements are represented as `c0 + c1*t`
//! with canonical coefficients, and all products reduce through the
//! relation `t^2 = b*t + a`.
//!
//! The same module exposes the residue field GF(p^2) = Z_p[t] / (f mod p)
//! together with the reduction map onto it, which is where the orbit
//! analysis tests whether a starting point's image falls in a given
//! cyclic subgroup.

use crate::error::{Error, Result};
use crate::zpe::{self, RingContext};

/// An element `c0 + c1*t` of the extension ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub c0: u64,
    pub c1: u64,
}

/// An element `r0 + r1*t` of the residue field GF(p^2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub r0: u64,
    pub r1: u64,
}

/// The extension ring Z_{p^e}[t] / (t^2 - b*t - a) for a fixed `(a, b)`
/// whose characteristic polynomial is irreducible modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadContext {
    base: RingContext,
    a: u64,
    b: u64,
    /// `(p^2 - 1) * p^{2(e-1)}`, the order of the unit group.
    group_order: u64,
    group_factors: Vec<(u64, u32)>,
    /// Factorization of `p^2 - 1`, the residue field's unit group order.
    field_factors: Vec<(u64, u32)>,
}

impl QuadContext {
    /// Builds the extension, verifying irreducibility of `t^2 - b*t - a`
    /// modulo `p`: the discriminant `b^2 + 4a` must be a unit non-square.
    pub fn new(base: RingContext, a: u64, b: u64) -> Result<Self> {
        let p = base.p();
        let (a, b) = (base.residue(a), base.residue(b));
        let disc = base.add(base.mul(b, b), base.mul(4, a));
        let d0 = disc % p;
        if d0 == 0 || zpe::pow_mod(d0, (p - 1) / 2, p) != p - 1 {
            return Err(Error::ReduciblePolynomial { a, b });
        }
        let p_sq_minus_one = p * p - 1;
        // p^{2e} < 2^62, so the group order is safe in u64.
        let group_order = p_sq_minus_one * (base.modulus() / p) * (base.modulus() / p);
        let field_factors = zpe::factorize(p_sq_minus_one);
        let mut group_factors = field_factors.clone();
        if base.e() > 1 {
            group_factors.push((p, 2 * (base.e() - 1)));
            group_factors.sort_unstable();
        }
        Ok(QuadContext {
            base,
            a,
            b,
            group_order,
            group_factors,
            field_factors,
        })
    }

    pub fn base(&self) -> &RingContext {
        &self.base
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Order of the unit group, `(p^2 - 1) * p^{2(e-1)}`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Canonicalizes a coefficient pair into an element.
    pub fn elem(&self, c0: u64, c1: u64) -> QuadElem {
        QuadElem {
            c0: self.base.residue(c0),
            c1: self.base.residue(c1),
        }
    }

    pub fn zero(&self) -> QuadElem {
        QuadElem { c0: 0, c1: 0 }
    }

    pub fn one(&self) -> QuadElem {
        QuadElem { c0: 1, c1: 0 }
    }

    /// The adjoined root `t` of the characteristic polynomial.
    pub fn root(&self) -> QuadElem {
        QuadElem { c0: 0, c1: 1 }
    }

    /// The conjugate root `b - t`.
    pub fn conjugate_root(&self) -> QuadElem {
        self.elem(self.b, self.base.neg(1))
    }

    pub fn add(&self, x: QuadElem, y: QuadElem) -> QuadElem {
        QuadElem {
            c0: self.base.add(x.c0, y.c0),
            c1: self.base.add(x.c1, y.c1),
        }
    }

    pub fn sub(&self, x: QuadElem, y: QuadElem) -> QuadElem {
        QuadElem {
            c0: self.base.sub(x.c0, y.c0),
            c1: self.base.sub(x.c1, y.c1),
        }
    }

    /// Product reduced through `t^2 = b*t + a`.
    pub fn mul(&self, x: QuadElem, y: QuadElem) -> QuadElem {
        let zpe = &self.base;
        let cross = zpe.mul(x.c1, y.c1);
        QuadElem {
            c0: zpe.add(zpe.mul(x.c0, y.c0), zpe.mul(self.a, cross)),
            c1: zpe.add(
                zpe.add(zpe.mul(x.c0, y.c1), zpe.mul(x.c1, y.c0)),
                zpe.mul(self.b, cross),
            ),
        }
    }

    pub fn pow(&self, x: QuadElem, mut n: u64) -> QuadElem {
        let mut base = x;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// The ring automorphism swapping the two roots: `t -> b - t`.
    pub fn conjugate(&self, x: QuadElem) -> QuadElem {
        QuadElem {
            c0: self.base.add(x.c0, self.base.mul(x.c1, self.b)),
            c1: self.base.neg(x.c1),
        }
    }

    /// The norm `x * conjugate(x)`, which lands in the base ring.
    pub fn norm(&self, x: QuadElem) -> u64 {
        let zpe = &self.base;
        zpe.sub(
            zpe.add(zpe.mul(x.c0, x.c0), zpe.mul(self.b, zpe.mul(x.c0, x.c1))),
            zpe.mul(self.a, zpe.mul(x.c1, x.c1)),
        )
    }

    /// Units are exactly the elements with unit norm.
    pub fn is_unit(&self, x: QuadElem) -> bool {
        self.base.is_unit(self.norm(x))
    }

    /// Inverse via `x^{-1} = conjugate(x) / norm(x)`.
    pub fn inverse(&self, x: QuadElem) -> Result<QuadElem> {
        let norm_inv = self.base.inverse(self.norm(x))?;
        let conj = self.conjugate(x);
        Ok(QuadElem {
            c0: self.base.mul(conj.c0, norm_inv),
            c1: self.base.mul(conj.c1, norm_inv),
        })
    }

    /// Multiplicative order of a unit, by stripping prime factors from the
    /// unit group order.
    pub fn order(&self, x: QuadElem) -> Result<u64> {
        if !self.is_unit(x) {
            return Err(Error::NotUnit(self.norm(x)));
        }
        let mut order = self.group_order;
        for &(q, _) in &self.group_factors {
            while order % q == 0 && self.pow(x, order / q) == self.one() {
                order /= q;
            }
        }
        Ok(order)
    }

    /// Coefficient-wise reduction onto the residue field GF(p^2).
    pub fn residue_image(&self, x: QuadElem) -> FieldElem {
        let p = self.base.p();
        FieldElem {
            r0: x.c0 % p,
            r1: x.c1 % p,
        }
    }

    pub fn field_elem(&self, r0: u64, r1: u64) -> FieldElem {
        let p = self.base.p();
        FieldElem { r0: r0 % p, r1: r1 % p }
    }

    pub fn field_one(&self) -> FieldElem {
        FieldElem { r0: 1, r1: 0 }
    }

    pub fn field_sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let p = self.base.p();
        FieldElem {
            r0: (x.r0 + p - y.r0) % p,
            r1: (x.r1 + p - y.r1) % p,
        }
    }

    /// Field product through `t^2 = b*t + a` with mod-`p` coefficients.
    pub fn field_mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let p = self.base.p();
        let cross = x.r1 * y.r1 % p;
        FieldElem {
            r0: (x.r0 * y.r0 + self.a % p * cross) % p,
            r1: (x.r0 * y.r1 + x.r1 * y.r0 + self.b % p * cross) % p,
        }
    }

    pub fn field_pow(&self, x: FieldElem, mut n: u64) -> FieldElem {
        let mut base = x;
        let mut acc = self.field_one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.field_mul(acc, base);
            }
            base = self.field_mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Field inverse; errors only on the zero element since GF(p^2) is a
    /// field.
    pub fn field_inverse(&self, x: FieldElem) -> Result<FieldElem> {
        if x.r0 == 0 && x.r1 == 0 {
            return Err(Error::ZeroElement);
        }
        let p = self.base.p();
        // norm and conjugate restricted to mod-p coefficients
        let norm = ((x.r0 * x.r0 + self.b % p * (x.r0 * x.r1 % p)) % p + p
            - self.a % p * (x.r1 * x.r1 % p) % p)
            % p;
        let norm_inv = zpe::pow_mod(norm, p - 2, p);
        let conj = FieldElem {
            r0: (x.r0 + self.b % p * x.r1) % p,
            r1: (p - x.r1) % p,
        };
        Ok(FieldElem {
            r0: conj.r0 * norm_inv % p,
            r1: conj.r1 * norm_inv % p,
        })
    }

    /// Multiplicative order in GF(p^2)^*, a divisor of `p^2 - 1`.
    pub fn field_order(&self, x: FieldElem) -> Result<u64> {
        if x.r0 == 0 && x.r1 == 0 {
            return Err(Error::ZeroElement);
        }
        let p = self.base.p();
        let mut order = p * p - 1;
        for &(q, _) in &self.field_factors {
            while order % q == 0 && self.field_pow(x, order / q) == self.field_one() {
                order /= q;
            }
        }
        Ok(order)
    }
}
