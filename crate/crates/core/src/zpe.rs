//! Exact arithmetic in the residue ring Z_{p^e}.
//!
//! Residues are canonical `u64` values in `[0, p^e)`. The modulus is capped
//! below 2^31 so that any product of two residues fits in a `u64` without
//! widening. A [`RingContext`] carries the modulus together with cached
//! factorizations, so multiplicative orders can be computed by stripping
//! prime factors from the unit group order rather than by iteration.

use crate::error::{Error, Result};

/// Moduli must stay below this bound so `u64` multiplication cannot overflow.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The ring Z_{p^e} for an odd prime `p` and exponent `e >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingContext {
    p: u64,
    e: u32,
    modulus: u64,
    /// `(p - 1) * p^{e-1}`, the order of the unit group.
    group_order: u64,
    /// Factorization of `p - 1`, shared by order computations mod `p`.
    p_minus_one_factors: Vec<(u64, u32)>,
    /// Factorization of the unit group order.
    group_factors: Vec<(u64, u32)>,
}

impl RingContext {
    /// Builds the ring Z_{p^e}, validating that `p` is an odd prime,
    /// `e >= 1`, and `p^e < 2^31`.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ExponentOutOfRange(e));
        }
        let mut modulus: u64 = 1;
        for _ in 0..e {
            modulus = modulus
                .checked_mul(p)
                .filter(|&m| m < MAX_MODULUS)
                .ok_or(Error::ModulusTooLarge { p, e })?;
        }
        let group_order = (p - 1) * (modulus / p);
        let p_minus_one_factors = factorize(p - 1);
        let mut group_factors = p_minus_one_factors.clone();
        if e > 1 {
            group_factors.push((p, e - 1));
            group_factors.sort_unstable();
        }
        Ok(RingContext {
            p,
            e,
            modulus,
            group_order,
            p_minus_one_factors,
            group_factors,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the unit group, `(p - 1) * p^{e-1}`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Maps an arbitrary `u64` to its canonical residue.
    pub fn residue(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.modulus
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        (x + self.modulus - y % self.modulus) % self.modulus
    }

    pub fn neg(&self, x: u64) -> u64 {
        (self.modulus - x % self.modulus) % self.modulus
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        x * y % self.modulus
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, x: u64, mut n: u64) -> u64 {
        let mut base = x % self.modulus;
        let mut acc = 1 % self.modulus;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// True when `x` is invertible, i.e. not divisible by `p`.
    pub fn is_unit(&self, x: u64) -> bool {
        x % self.p != 0
    }

    /// Multiplicative inverse by extended Euclid; errors on non-units.
    pub fn inverse(&self, x: u64) -> Result<u64> {
        let x = x % self.modulus;
        if !self.is_unit(x) {
            return Err(Error::NotUnit(x));
        }
        // Invariants: old_r = old_s * x (mod modulus), r = s * x (mod modulus).
        let (mut old_r, mut r) = (x as i64, self.modulus as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(old_s.rem_euclid(self.modulus as i64) as u64)
    }

    /// p-adic valuation, with the convention `valuation(0) = e`.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.modulus;
        if x == 0 {
            return self.e;
        }
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Base-`p` digits of `x`, least significant first, always `e` of them.
    pub fn padic_digits(&self, x: u64) -> Vec<u64> {
        let mut x = x % self.modulus;
        let mut digits = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            digits.push(x % self.p);
            x /= self.p;
        }
        digits
    }

    /// The image of `x` under the reduction map Z_{p^e} -> Z_{p^{e-k}}.
    pub fn reduce(&self, x: u64, k: u32) -> Result<u64> {
        if k >= self.e {
            return Err(Error::ReductionOutOfRange { k, e: self.e });
        }
        let mut m = self.modulus;
        for _ in 0..k {
            m /= self.p;
        }
        Ok(x % m)
    }

    /// The codomain ring of [`RingContext::reduce`] with depth `k`.
    pub fn reduced_context(&self, k: u32) -> Result<RingContext> {
        if k >= self.e {
            return Err(Error::ReductionOutOfRange { k, e: self.e });
        }
        RingContext::new(self.p, self.e - k)
    }

    /// Multiplicative order of a unit: starts from the unit group order and
    /// strips every prime factor that leaves the power at 1.
    pub fn mult_order(&self, x: u64) -> Result<u64> {
        let x = x % self.modulus;
        if !self.is_unit(x) {
            return Err(Error::NotUnit(x));
        }
        let mut order = self.group_order;
        for &(q, _) in &self.group_factors {
            while order % q == 0 && self.pow(x, order / q) == 1 {
                order /= q;
            }
        }
        Ok(order)
    }

    /// Order of `u` in the unit group of the residue field Z_p.
    pub(crate) fn order_mod_p(&self, u: u64) -> Result<u64> {
        let u = u % self.p;
        if u == 0 {
            return Err(Error::NotUnit(u));
        }
        let mut order = self.p - 1;
        for &(q, _) in &self.p_minus_one_factors {
            while order % q == 0 && pow_mod(u, order / q, self.p) == 1 {
                order /= q;
            }
        }
        Ok(order)
    }

    /// Square root of a unit square, canonicalized so that the root's
    /// mod-`p` digit lies in `[1, (p-1)/2]`.
    ///
    /// Finds a root modulo `p` by scanning, then lifts it with Newton steps
    /// `r <- r - (r^2 - x) / (2r)`; each step doubles the number of correct
    /// base-`p` digits.
    pub fn sqrt_unit(&self, x: u64) -> Result<u64> {
        let x = x % self.modulus;
        if !self.is_unit(x) {
            return Err(Error::NotUnit(x));
        }
        let x0 = x % self.p;
        let mut r = (1..self.p)
            .find(|&r| r * r % self.p == x0)
            .ok_or(Error::NonResidue(x))?;
        let mut correct_digits = 1u64;
        while correct_digits < self.e as u64 {
            let two_r_inv = self.inverse(self.mul(2, r))?;
            r = self.sub(r, self.mul(self.sub(self.mul(r, r), x), two_r_inv));
            correct_digits *= 2;
        }
        debug_assert_eq!(self.mul(r, r), x);
        if r % self.p > (self.p - 1) / 2 {
            r = self.neg(r);
        }
        Ok(r)
    }
}

/// Deterministic trial-division primality test; fine at this scale since
/// moduli stay below 2^31.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization into sorted `(prime, multiplicity)` pairs.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut push = |q: u64, n: &mut u64| {
        let mut mult = 0;
        while *n % q == 0 {
            *n /= q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((q, mult));
        }
    };
    push(2, &mut n);
    let mut q = 3;
    while q * q <= n {
        push(q, &mut n);
        q += 2;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// All divisors of `n`, ascending.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1];
    for (q, mult) in factorize(n) {
        let prev = divs.clone();
        let mut power = 1;
        for _ in 0..mult {
            power *= q;
            divs.extend(prev.iter().map(|d| d * power));
        }
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(q, mult)| (q - 1) * q.pow(mult - 1))
        .product::<u64>()
        .max(1)
}

/// Modular exponentiation for moduli below 2^31.
pub(crate) fn pow_mod(x: u64, mut n: u64, m: u64) -> u64 {
    let mut base = x % m;
    let mut acc = 1 % m;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        n >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_construction() {
        let ctx = RingContext::new(5, 3).unwrap();
        assert_eq!(ctx.modulus(), 125);
        assert_eq!(ctx.group_order(), 100);

        assert_eq!(RingContext::new(4, 2), Err(Error::NotPrime(4)));
        assert_eq!(RingContext::new(2, 5), Err(Error::NotPrime(2)));
        assert_eq!(RingContext::new(5, 0), Err(Error::ExponentOutOfRange(0)));
        assert_eq!(
            RingContext::new(5, 14),
            Err(Error::ModulusTooLarge { p: 5, e: 14 })
        );
        // 46349^2 > 2^31 even though 46349 itself is fine as a prime.
        assert!(RingContext::new(46349, 2).is_err());
    }

    #[test]
    fn inverse_values() {
        let ctx = RingContext::new(5, 3).unwrap();
        assert_eq!(ctx.inverse(2), Ok(63));
        assert_eq!(ctx.inverse(1), Ok(1));
        assert_eq!(ctx.inverse(124), Ok(124));
        let ctx2 = RingContext::new(5, 2).unwrap();
        assert_eq!(ctx2.inverse(5), Err(Error::NotUnit(5)));
        assert_eq!(ctx2.inverse(0), Err(Error::NotUnit(0)));
    }

    #[test]
    fn inverse_round_trip_exhaustive() {
        let ctx = RingContext::new(5, 3).unwrap();
        for x in 0..125 {
            if !ctx.is_unit(x) {
                assert!(ctx.inverse(x).is_err());
                continue;
            }
            let inv = ctx.inverse(x).unwrap();
            assert_eq!(ctx.mul(x, inv), 1);
            assert_eq!(ctx.inverse(inv), Ok(x));
        }
    }

    #[test]
    fn valuation_convention() {
        let ctx = RingContext::new(5, 3).unwrap();
        assert_eq!(ctx.valuation(50), 2);
        assert_eq!(ctx.valuation(0), 3);
        assert_eq!(ctx.valuation(7), 0);
        assert_eq!(ctx.valuation(5), 1);
    }

    #[test]
    fn padic_digits_and_reconstruction() {
        let ctx = RingContext::new(5, 3).unwrap();
        assert_eq!(ctx.padic_digits(38), vec![3, 2, 1]);
        assert_eq!(ctx.padic_digits(0), vec![0, 0, 0]);
        assert_eq!(ctx.padic_digits(124), vec![4, 4, 4]);

        for x in 0..125u64 {
            let digits = ctx.padic_digits(x);
            let rebuilt: u64 = digits
                .iter()
                .rev()
                .fold(0, |acc, &d| acc * 5 + d);
            assert_eq!(rebuilt, x);
            // The valuation is the index of the first nonzero digit.
            let first_nonzero = digits.iter().position(|&d| d != 0).unwrap_or(3);
            assert_eq!(ctx.valuation(x) as usize, first_nonzero);
        }
    }

    #[test]
    fn reduction_maps() {
        let ctx = RingContext::new(5, 3).unwrap();
        assert_eq!(ctx.reduce(38, 0), Ok(38));
        assert_eq!(ctx.reduce(38, 1), Ok(13));
        assert_eq!(ctx.reduce(38, 2), Ok(3));
        assert_eq!(ctx.reduce(38, 3), Err(Error::ReductionOutOfRange { k: 3, e: 3 }));
        assert_eq!(ctx.reduced_context(2).unwrap().modulus(), 5);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        let ctx = RingContext::new(5, 3).unwrap();
        for k in [1, 2] {
            let target = ctx.reduced_context(k).unwrap();
            for x in 0..125 {
                for y in 0..125 {
                    let (rx, ry) = (ctx.reduce(x, k).unwrap(), ctx.reduce(y, k).unwrap());
                    assert_eq!(ctx.reduce(ctx.add(x, y), k).unwrap(), target.add(rx, ry));
                    assert_eq!(ctx.reduce(ctx.mul(x, y), k).unwrap(), target.mul(rx, ry));
                }
            }
        }
    }

    #[test]
    fn mult_order_values() {
        let ctx = RingContext::new(5, 2).unwrap();
        assert_eq!(ctx.mult_order(7), Ok(4));
        assert_eq!(ctx.mult_order(24), Ok(2));
        assert_eq!(ctx.mult_order(1), Ok(1));
        assert_eq!(ctx.mult_order(2), Ok(20));
        assert_eq!(ctx.mult_order(5), Err(Error::NotUnit(5)));
    }

    #[test]
    fn mult_order_matches_naive_iteration() {
        for (p, e) in [(5, 2), (7, 2)] {
            let ctx = RingContext::new(p, e).unwrap();
            for x in 1..ctx.modulus() {
                if !ctx.is_unit(x) {
                    continue;
                }
                let mut acc = x;
                let mut naive = 1;
                while acc != 1 {
                    acc = ctx.mul(acc, x);
                    naive += 1;
                }
                assert_eq!(ctx.mult_order(x), Ok(naive), "x={x} mod {}", ctx.modulus());
                assert_eq!(ctx.group_order() % naive, 0);
            }
        }
    }

    #[test]
    fn order_mod_p_matches_field_order() {
        let ctx = RingContext::new(7, 2).unwrap();
        assert_eq!(ctx.order_mod_p(1), Ok(1));
        assert_eq!(ctx.order_mod_p(6), Ok(2));
        assert_eq!(ctx.order_mod_p(3), Ok(6));
        assert_eq!(ctx.order_mod_p(2), Ok(3));
        assert_eq!(ctx.order_mod_p(7), Err(Error::NotUnit(0)));
    }

    #[test]
    fn sqrt_values() {
        let ctx = RingContext::new(5, 2).unwrap();
        assert_eq!(ctx.sqrt_unit(6), Ok(16));
        assert_eq!(ctx.sqrt_unit(4), Ok(2));
        assert_eq!(ctx.sqrt_unit(1), Ok(1));
        assert_eq!(ctx.sqrt_unit(2), Err(Error::NonResidue(2)));
        assert_eq!(ctx.sqrt_unit(5), Err(Error::NotUnit(5)));
    }

    #[test]
    fn sqrt_squares_back_and_is_canonical() {
        let ctx = RingContext::new(5, 3).unwrap();
        for x in 0..125 {
            match ctx.sqrt_unit(x) {
                Ok(r) => {
                    assert_eq!(ctx.mul(r, r), x);
                    assert!((1..=2).contains(&(r % 5)));
                }
                Err(Error::NotUnit(_)) => assert!(!ctx.is_unit(x)),
                Err(Error::NonResidue(_)) => {
                    // A unit non-square: no residue squares to it.
                    assert!((0..125).all(|r| ctx.mul(r, r) != x));
                }
                Err(other) => panic!("unexpected error {other:?}"),
            }
        }
    }

    #[test]
    fn euler_phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(euler_phi(75), 40);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn divisors_are_sorted_and_complete() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        let divs = divisors(360);
        assert_eq!(divs.len(), 24);
        assert!(divs.windows(2).all(|w| w[0] < w[1]));
        assert!(divs.iter().all(|d| 360 % d == 0));
    }
}
