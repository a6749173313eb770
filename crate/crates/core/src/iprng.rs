//! The inversive generator itself and its orbit oracle.
//!
//! One step of the generator maps a unit `x` to `a * x^{-1} + b` and every
//! non-unit to `b`. Orbits on a finite ring are eventually periodic, so each
//! starting point has a preperiod (steps until the cycle is entered) and an
//! eventual period (the cycle length). [`eventual_period`] measures both by
//! direct simulation with a first-visit table; it is the ground truth that
//! the closed-form analyzer is checked against.
//!
//! The companion linear recurrence `y_{n+2} = b * y_{n+1} + a * y_n` with
//! `y_0 = 1, y_1 = x_0` tracks the orbit through consecutive ratios
//! `x_n = y_{n+1} / y_n` for as long as those `y` values stay units, which
//! is what links orbit periods to the root structure of `t^2 - b*t - a`.

use crate::zpe::RingContext;

/// A generator instance: the map `x -> a * x^{-1} + b` started at `x0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorParams {
    pub a: u64,
    pub b: u64,
    pub x0: u64,
}

/// Shape of an orbit: `preperiod` steps lead to a cycle of length `period`
/// whose first-visited state is `cycle_rep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitResult {
    pub preperiod: u64,
    pub period: u64,
    pub cycle_rep: u64,
}

/// One step of the generator.
pub fn step(ctx: &RingContext, a: u64, b: u64, x: u64) -> u64 {
    match ctx.inverse(x) {
        Ok(inv) => ctx.add(ctx.mul(a, inv), b),
        Err(_) => ctx.residue(b),
    }
}

/// The first `n` states `x_0, ..., x_{n-1}`.
pub fn orbit(ctx: &RingContext, params: &GeneratorParams, n: usize) -> Vec<u64> {
    let a = ctx.residue(params.a);
    let b = ctx.residue(params.b);
    let mut x = ctx.residue(params.x0);
    let mut states = Vec::with_capacity(n);
    for _ in 0..n {
        states.push(x);
        x = step(ctx, a, b, x);
    }
    states
}

/// Simulates until a state repeats, recording the first-visit index of every
/// state seen. The repeated state's index is the preperiod; the rest of the
/// walk is the cycle.
pub fn eventual_period(ctx: &RingContext, params: &GeneratorParams) -> OrbitResult {
    let a = ctx.residue(params.a);
    let b = ctx.residue(params.b);
    let mut first_visit = vec![u32::MAX; ctx.modulus() as usize];
    let mut x = ctx.residue(params.x0);
    let mut i: u32 = 0;
    while first_visit[x as usize] == u32::MAX {
        first_visit[x as usize] = i;
        x = step(ctx, a, b, x);
        i += 1;
    }
    let preperiod = first_visit[x as usize];
    OrbitResult {
        preperiod: preperiod as u64,
        period: (i - preperiod) as u64,
        cycle_rep: x,
    }
}

/// The companion linear recurrence `y_{n+2} = b * y_{n+1} + a * y_n` seeded
/// with `y_0 = 1, y_1 = x0`; returns `y_0, ..., y_n`.
pub fn companion_sequence(ctx: &RingContext, a: u64, b: u64, x0: u64, n: usize) -> Vec<u64> {
    let a = ctx.residue(a);
    let b = ctx.residue(b);
    let mut seq = Vec::with_capacity(n + 1);
    seq.push(ctx.residue(1));
    if n >= 1 {
        seq.push(ctx.residue(x0));
    }
    for i in 2..=n {
        seq.push(ctx.add(ctx.mul(b, seq[i - 1]), ctx.mul(a, seq[i - 2])));
    }
    seq
}

/// Checks that `x_n = y_{n+1} / y_n` for every `n < steps` such that
/// `y_1, ..., y_{n+1}` are all units. The comparison stops at the first
/// non-unit `y`, past which the ratios no longer track the orbit.
pub fn orbit_matches_companion_ratios(
    ctx: &RingContext,
    a: u64,
    b: u64,
    x0: u64,
    steps: usize,
) -> bool {
    let xs = orbit(ctx, &GeneratorParams { a, b, x0 }, steps);
    let ys = companion_sequence(ctx, a, b, x0, steps);
    for n in 0..steps {
        if !ctx.is_unit(ys[n + 1]) {
            return true;
        }
        let ratio = ctx.mul(ys[n + 1], ctx.inverse(ys[n]).expect("prior y was a unit"));
        if ratio != xs[n] {
            return false;
        }
    }
    true
}

/// Precomputed inverse table: `table[x] = x^{-1}`, or 0 for non-units.
/// Shared by all sweep workers since it only depends on the ring.
pub(crate) fn inverse_table(ctx: &RingContext) -> Vec<u64> {
    (0..ctx.modulus())
        .map(|x| ctx.inverse(x).unwrap_or(0))
        .collect()
}

/// Reusable orbit-period engine for exhaustive sweeps.
///
/// Rather than clearing the first-visit table for each of the millions of
/// starting points, entries are stamped with an epoch counter and stale
/// entries are simply ignored.
pub(crate) struct OrbitOracle<'a> {
    modulus: u64,
    inverses: &'a [u64],
    stamp: Vec<u64>,
    first_visit: Vec<u32>,
    epoch: u64,
}

impl<'a> OrbitOracle<'a> {
    pub(crate) fn new(ctx: &RingContext, inverses: &'a [u64]) -> Self {
        let m = ctx.modulus();
        OrbitOracle {
            modulus: m,
            inverses,
            stamp: vec![0; m as usize],
            first_visit: vec![0; m as usize],
            epoch: 0,
        }
    }

    /// Eventual period of the orbit of `x0` under canonical `(a, b)`.
    pub(crate) fn period(&mut self, a: u64, b: u64, x0: u64) -> u64 {
        self.epoch += 1;
        let mut x = x0;
        let mut i: u32 = 0;
        while self.stamp[x as usize] != self.epoch {
            self.stamp[x as usize] = self.epoch;
            self.first_visit[x as usize] = i;
            let inv = self.inverses[x as usize];
            x = if inv == 0 { b } else { (a * inv + b) % self.modulus };
            i += 1;
        }
        (i - self.first_visit[x as usize]) as u64
    }
}
