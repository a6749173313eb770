//! Randomized invariants exercised through the public API.
//!
//! Deterministic value checks live next to each module; the properties here
//! cross-check the algebra on random inputs and, most importantly, pit the
//! branch-based period predictor against a brute-force orbit walk.

use iprng_core::analyzer;
use iprng_core::charpoly::{classify, CharPolyClass};
use iprng_core::gr2::QuadContext;
use iprng_core::iprng::{self, GeneratorParams};
use iprng_core::zpe::RingContext;
use proptest::prelude::*;

/// Moduli kept small enough that walking a full orbit stays cheap.
const CONTEXTS: [(u64, u32); 6] = [(5, 2), (5, 3), (7, 2), (7, 3), (11, 2), (13, 2)];

fn arb_context() -> impl Strategy<Value = RingContext> {
    (0..CONTEXTS.len()).prop_map(|i| {
        let (p, e) = CONTEXTS[i];
        RingContext::new(p, e).expect("pool entries are valid")
    })
}

/// A context together with `n` ring elements drawn uniformly from it.
fn context_with_values(n: usize) -> impl Strategy<Value = (RingContext, Vec<u64>)> {
    arb_context().prop_flat_map(move |ctx| {
        let m = ctx.modulus();
        (Just(ctx), proptest::collection::vec(0..m, n))
    })
}

/// A quadratic extension built from a random pair whose characteristic
/// polynomial stays irreducible, plus `n` random coefficient pairs.
fn quad_with_elems(n: usize) -> impl Strategy<Value = (QuadContext, Vec<(u64, u64)>)> {
    arb_context()
        .prop_flat_map(|ctx| {
            let m = ctx.modulus();
            (Just(ctx), 0..m, 0..m)
        })
        .prop_filter_map("pair must have an irreducible characteristic polynomial", |(ctx, a, b)| {
            QuadContext::new(ctx, a, b).ok()
        })
        .prop_flat_map(move |quad| {
            let m = quad.base().modulus();
            (Just(quad), proptest::collection::vec((0..m, 0..m), n))
        })
}

/// Distinct prime factors by trial division; test-local oracle.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

proptest! {
    #[test]
    fn predictor_agrees_with_orbit_walk((ctx, vals) in context_with_values(3)) {
        let params = GeneratorParams { a: vals[0], b: vals[1], x0: vals[2] };
        let predicted = analyzer::predict_period(&ctx, params.a, params.b, params.x0).unwrap();
        let walked = iprng::eventual_period(&ctx, &params);
        prop_assert_eq!(
            predicted.period,
            walked.period,
            "p={} e={} a={} b={} x0={} branch={}",
            ctx.p(),
            ctx.e(),
            params.a,
            params.b,
            params.x0,
            predicted.branch
        );
    }

    #[test]
    fn orbit_repeats_with_minimal_period((ctx, vals) in context_with_values(3)) {
        let params = GeneratorParams { a: vals[0], b: vals[1], x0: vals[2] };
        let result = iprng::eventual_period(&ctx, &params);
        let n0 = result.preperiod as usize;
        let period = result.period as usize;
        let orbit = iprng::orbit(&ctx, &params, n0 + 2 * period);

        prop_assert_eq!(orbit[n0], result.cycle_rep);
        for i in n0..(n0 + period) {
            prop_assert_eq!(orbit[i], orbit[i + period]);
        }
        // Minimality: a shorter period would have to divide this one, and a
        // single on-cycle disagreement rules out each maximal proper divisor.
        for q in prime_factors(result.period) {
            prop_assert_ne!(orbit[n0], orbit[n0 + period / q as usize]);
        }
        // The state before the cycle entry (if any) never recurs.
        if n0 > 0 {
            prop_assert!(!orbit[n0..].contains(&orbit[n0 - 1]));
        }
    }

    #[test]
    fn companion_ratios_track_the_orbit((ctx, vals) in context_with_values(3)) {
        prop_assert!(iprng::orbit_matches_companion_ratios(
            &ctx, vals[0], vals[1], vals[2], 40,
        ));
    }

    #[test]
    fn unit_inverse_round_trips((ctx, vals) in context_with_values(1)) {
        let x = vals[0];
        match ctx.inverse(x) {
            Ok(inv) => {
                prop_assert!(ctx.is_unit(x));
                prop_assert_eq!(ctx.mul(x, inv), 1);
            }
            Err(_) => prop_assert!(!ctx.is_unit(x)),
        }
    }

    #[test]
    fn sqrt_of_a_square_is_canonical((ctx, vals) in context_with_values(1)) {
        let x = vals[0];
        prop_assume!(ctx.is_unit(x));
        let square = ctx.mul(x, x);
        let root = ctx.sqrt_unit(square).unwrap();
        prop_assert_eq!(ctx.mul(root, root), square);
        prop_assert!(root == x || root == ctx.neg(x));
        // Canonical pick: the mod-p digit falls in the lower half interval.
        prop_assert!(root % ctx.p() <= (ctx.p() - 1) / 2);
    }

    #[test]
    fn digit_expansion_reconstructs((ctx, vals) in context_with_values(1)) {
        let x = vals[0];
        let digits = ctx.padic_digits(x);
        prop_assert_eq!(digits.len(), ctx.e() as usize);
        let rebuilt = digits.iter().rev().fold(0u64, |acc, &d| acc * ctx.p() + d);
        prop_assert_eq!(rebuilt, x);
    }

    #[test]
    fn reduction_commutes_with_arithmetic((ctx, vals) in context_with_values(2), k in 1u32..3) {
        prop_assume!(k < ctx.e());
        let (x, y) = (vals[0], vals[1]);
        let small = ctx.reduced_context(k).unwrap();
        let r = |v: u64| ctx.reduce(v, k).unwrap();
        prop_assert_eq!(small.add(r(x), r(y)), r(ctx.add(x, y)));
        prop_assert_eq!(small.mul(r(x), r(y)), r(ctx.mul(x, y)));
        prop_assert_eq!(small.neg(r(x)), r(ctx.neg(x)));
    }

    #[test]
    fn mult_order_is_minimal((ctx, vals) in context_with_values(1)) {
        let x = vals[0];
        prop_assume!(ctx.is_unit(x));
        let ord = ctx.mult_order(x).unwrap();
        prop_assert_eq!(ctx.pow(x, ord), 1);
        prop_assert_eq!(ctx.group_order() % ord, 0);
        for q in prime_factors(ord) {
            prop_assert_ne!(ctx.pow(x, ord / q), 1);
        }
    }

    #[test]
    fn conjugation_is_a_ring_involution((quad, cs) in quad_with_elems(2)) {
        let x = quad.elem(cs[0].0, cs[0].1);
        let y = quad.elem(cs[1].0, cs[1].1);
        prop_assert_eq!(quad.conjugate(quad.conjugate(x)), x);
        prop_assert_eq!(
            quad.conjugate(quad.add(x, y)),
            quad.add(quad.conjugate(x), quad.conjugate(y))
        );
        prop_assert_eq!(
            quad.conjugate(quad.mul(x, y)),
            quad.mul(quad.conjugate(x), quad.conjugate(y))
        );
    }

    #[test]
    fn norm_is_multiplicative((quad, cs) in quad_with_elems(2)) {
        let x = quad.elem(cs[0].0, cs[0].1);
        let y = quad.elem(cs[1].0, cs[1].1);
        prop_assert_eq!(
            quad.norm(quad.mul(x, y)),
            quad.base().mul(quad.norm(x), quad.norm(y))
        );
    }

    #[test]
    fn extension_inverse_round_trips((quad, cs) in quad_with_elems(1)) {
        let x = quad.elem(cs[0].0, cs[0].1);
        match quad.inverse(x) {
            Ok(inv) => {
                prop_assert!(quad.is_unit(x));
                prop_assert_eq!(quad.mul(x, inv), quad.one());
            }
            Err(_) => prop_assert!(!quad.is_unit(x)),
        }
    }

    #[test]
    fn extension_order_divides_group_order((quad, cs) in quad_with_elems(1)) {
        let x = quad.elem(cs[0].0, cs[0].1);
        prop_assume!(quad.is_unit(x));
        let ord = quad.order(x).unwrap();
        prop_assert_eq!(quad.pow(x, ord), quad.one());
        prop_assert_eq!(quad.group_order() % ord, 0);
    }

    #[test]
    fn classified_roots_satisfy_the_polynomial((ctx, vals) in context_with_values(2)) {
        let (a, b) = (vals[0], vals[1]);
        match classify(&ctx, a, b).unwrap().class {
            CharPolyClass::AInP => prop_assert!(!ctx.is_unit(a)),
            CharPolyClass::Reducible { alpha, beta } => {
                for root in [alpha, beta] {
                    let value = ctx.sub(ctx.mul(root, root), ctx.add(ctx.mul(b, root), a));
                    prop_assert_eq!(value, 0);
                }
                prop_assert!(ctx.is_unit(ctx.sub(alpha, beta)));
            }
            CharPolyClass::Irreducible { quad } => {
                for root in [quad.root(), quad.conjugate_root()] {
                    let value = quad.sub(
                        quad.mul(root, root),
                        quad.add(quad.mul(quad.elem(b, 0), root), quad.elem(a, 0)),
                    );
                    prop_assert_eq!(value, quad.zero());
                }
            }
            CharPolyClass::RepeatedRoot { omega } => {
                // A double root modulo p: f(omega) and f'(omega) both vanish.
                let p = ctx.p();
                prop_assert_eq!((omega * omega) % p, (b * omega + a) % p);
                prop_assert_eq!((2 * omega) % p, b % p);
            }
        }
    }

    #[test]
    fn histograms_merge_by_adding_counts(
        rows_a in proptest::collection::vec((1u64..60, 0u128..1_000), 0..12),
        rows_b in proptest::collection::vec((1u64..60, 0u128..1_000), 0..12),
    ) {
        let ha: analyzer::PeriodHistogram = rows_a.into_iter().collect();
        let hb: analyzer::PeriodHistogram = rows_b.into_iter().collect();
        let mut merged = ha.clone();
        merged.merge(&hb);
        prop_assert_eq!(merged.total(), ha.total() + hb.total());
        for (period, count) in merged.iter() {
            prop_assert_eq!(count, ha.get(period) + hb.get(period));
        }
    }
}
