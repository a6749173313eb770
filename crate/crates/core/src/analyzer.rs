//! Closed-form eventual periods: per-triple prediction and count tables.
//!
//! Every `(a, b, x0)` triple is routed through a decision tree keyed on the
//! root structure of `t^2 - b*t - a` and on how the seed `x0` sits relative
//! to the roots. Each leaf ("branch") carries a closed-form period:
//!
//! * `a` in `(p)` — the orbit hits a fixed point: period 1.
//! * `b` in `(p)` — non-unit seeds collapse (period 1); unit seeds cycle
//!   with the multiplicative order of the root ratio `alpha / beta`,
//!   reduced to depth `k` when the seed meets a root modulo `p^k`.
//! * `a, b` both units, distinct roots — the seed's cross-ratio
//!   `v = (x0 - omega1) / (x0 - omega2)` over the residue field decides:
//!   inside the cyclic group generated by `u = omega1 / omega2` the period
//!   is `ord(u) - 1`; outside it is the full root-ratio order (again
//!   reduced when the seed meets a root to positive depth).
//! * `a, b` units, repeated root `omega` — seeds away from `omega` mod `p`
//!   give period `p - 1`; seeds over `omega` give `p^{e-k}` where `k` is
//!   the valuation of `f(x0)`.
//!
//! [`contributions`] produces the same information in aggregate: how many
//! triples each branch sends to each period, as exact counts. The two views
//! are cross-checked against orbit simulation by [`crate::census`].

use std::collections::BTreeMap;
use std::fmt;

use crate::census::CaseFilter;
use crate::charpoly::{self, CharPolyClass};
use crate::error::{Error, Result};
use crate::gr2::{FieldElem, QuadContext};
use crate::iprng::GeneratorParams;
use crate::zpe::{self, RingContext};

/// Leaf of the period decision tree. The tags are stable rule identifiers
/// used in CLI output and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// `a` in `(p)`: the orbit reaches a fixed point within two steps.
    Thm1,
    /// `b` in `(p)`, non-unit seed: collapses onto the fixed point `b`.
    X0InP,
    /// `b` in `(p)`, seed is exactly a root: the root is a fixed point.
    RootHit,
    /// `b` in `(p)`, reducible, seed clear of both roots mod `p`: full
    /// root-ratio order.
    P1,
    /// `b` in `(p)`, reducible, seed meets a root to depth `k`: root-ratio
    /// order at reduced precision.
    P2,
    /// `b` in `(p)`, irreducible, unit seed: extension root-ratio order.
    P3,
    /// Units, reducible, cross-ratio inside the root-ratio subgroup:
    /// one less than the subgroup size.
    P4,
    /// Units, reducible, cross-ratio outside: full root-ratio order.
    P5,
    /// Units, reducible, seed is exactly a root: fixed point.
    P6Zero,
    /// Units, reducible, seed meets a root to depth `k`: reduced order.
    P6ZeroDiv,
    /// Units, irreducible, cross-ratio inside the subgroup (over GF(p^2)):
    /// one less than the subgroup size.
    P7,
    /// Units, irreducible, cross-ratio outside: full extension ratio order.
    P8,
    /// Units, repeated root, seed clear of it mod `p`: period `p - 1`.
    P9,
    /// Units, repeated root, `f(x0) = 0`: the seed sits on a fixed point
    /// of the doubled map.
    P10Zero,
    /// Units, repeated root, `f(x0)` of valuation `k`: period `p^{e-k}`.
    P10ZeroDiv,
}

/// Which `(a, b)` class a branch belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PairClass {
    Degenerate,
    IdealB,
    Units,
}

impl Branch {
    /// Stable identifier printed by the CLI and in reports.
    pub fn tag(self) -> &'static str {
        match self {
            Branch::Thm1 => "THM1",
            Branch::X0InP => "X0_IN_P",
            Branch::RootHit => "ROOT_HIT",
            Branch::P1 => "P1",
            Branch::P2 => "P2",
            Branch::P3 => "P3",
            Branch::P4 => "P4",
            Branch::P5 => "P5",
            Branch::P6Zero => "P6_ZERO",
            Branch::P6ZeroDiv => "P6_ZERODIV",
            Branch::P7 => "P7",
            Branch::P8 => "P8",
            Branch::P9 => "P9",
            Branch::P10Zero => "P10_ZERO",
            Branch::P10ZeroDiv => "P10_ZERODIV",
        }
    }

    pub(crate) fn pair_class(self) -> PairClass {
        match self {
            Branch::Thm1 => PairClass::Degenerate,
            Branch::X0InP | Branch::RootHit | Branch::P1 | Branch::P2 | Branch::P3 => {
                PairClass::IdealB
            }
            _ => PairClass::Units,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The quantities a prediction was computed from; which fields are present
/// depends on the branch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Witness {
    /// Order of the (possibly reduced) root ratio used as the period.
    pub ratio_order: Option<u64>,
    /// Contact depth: valuation of the seed-root difference, or of `f(x0)`
    /// for the repeated-root class.
    pub valuation: Option<u32>,
    /// Order of the residue-field root ratio (the subgroup size).
    pub residue_order: Option<u64>,
    /// Whether the seed's cross-ratio lies in that subgroup.
    pub in_omega: Option<bool>,
}

/// A predicted eventual period with its justification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodPrediction {
    pub period: u64,
    pub branch: Branch,
    pub witness: Witness,
}

fn prediction(period: u64, branch: Branch, witness: Witness) -> PeriodPrediction {
    PeriodPrediction { period, branch, witness }
}

/// Everything about a parameter pair `(a, b)` that predictions need, so a
/// sweep over seeds does the expensive work (classification, orders) once.
pub struct PairAnalysis<'a> {
    ctx: &'a RingContext,
    a: u64,
    b: u64,
    kind: PairKind,
}

enum PairKind {
    Degenerate,
    IdealBReducible {
        alpha: u64,
        beta: u64,
        /// `reduced_orders[k]` = order of the root ratio reduced to Z_{p^{e-k}}.
        reduced_orders: Vec<u64>,
    },
    IdealBIrreducible {
        ratio_order: u64,
    },
    UnitsReducible {
        alpha: u64,
        beta: u64,
        reduced_orders: Vec<u64>,
        /// Residue-field images of the roots and the order of their ratio.
        omega1: u64,
        omega2: u64,
        residue_order: u64,
    },
    UnitsIrreducible {
        quad: QuadContext,
        omega1: FieldElem,
        omega2: FieldElem,
        residue_order: u64,
        ratio_order: u64,
    },
    UnitsRepeatedRoot {
        omega: u64,
    },
}

impl<'a> PairAnalysis<'a> {
    /// Classifies `(a, b)` and precomputes every order the decision tree can
    /// ask for. Requires `p > 3` and `e >= 2`.
    pub fn new(ctx: &'a RingContext, a: u64, b: u64) -> Result<Self> {
        Self::build(ctx, a, b, false)
    }

    /// `swap_roots` relabels `(alpha, beta)` as `(beta, alpha)`; predictions
    /// must be invariant under it, which the tests exercise.
    fn build(ctx: &'a RingContext, a: u64, b: u64, swap_roots: bool) -> Result<Self> {
        if ctx.p() <= 3 || ctx.e() < 2 {
            return Err(Error::UnsupportedContext { p: ctx.p(), e: ctx.e() });
        }
        let a = ctx.residue(a);
        let b = ctx.residue(b);
        let charpoly = charpoly::classify(ctx, a, b)?;
        let b_is_unit = ctx.is_unit(b);
        // the subgroup size is the same under either root labeling, so it
        // can come straight from the classification
        let residue_order = match &charpoly.class {
            CharPolyClass::Reducible { .. } | CharPolyClass::Irreducible { .. } if b_is_unit => {
                Some(charpoly::residue_ratio_order(ctx, &charpoly)?)
            }
            _ => None,
        };
        let kind = match charpoly.class {
            CharPolyClass::AInP => PairKind::Degenerate,
            CharPolyClass::Reducible { alpha, beta } => {
                let (alpha, beta) = if swap_roots { (beta, alpha) } else { (alpha, beta) };
                let reduced_orders = reduced_ratio_orders(ctx, alpha, beta)?;
                if b_is_unit {
                    let (omega1, omega2) = (alpha % ctx.p(), beta % ctx.p());
                    PairKind::UnitsReducible {
                        alpha,
                        beta,
                        reduced_orders,
                        omega1,
                        omega2,
                        residue_order: residue_order.expect("computed for split unit pairs"),
                    }
                } else {
                    PairKind::IdealBReducible { alpha, beta, reduced_orders }
                }
            }
            CharPolyClass::Irreducible { quad } => {
                let (mut omega1, mut omega2) =
                    (quad.residue_image(quad.root()), quad.residue_image(quad.conjugate_root()));
                let (mut root, mut conjugate_root) = (quad.root(), quad.conjugate_root());
                if swap_roots {
                    std::mem::swap(&mut omega1, &mut omega2);
                    std::mem::swap(&mut root, &mut conjugate_root);
                }
                let ratio = quad.mul(root, quad.inverse(conjugate_root)?);
                let ratio_order = quad.order(ratio)?;
                if b_is_unit {
                    PairKind::UnitsIrreducible {
                        quad,
                        omega1,
                        omega2,
                        residue_order: residue_order.expect("computed for inert unit pairs"),
                        ratio_order,
                    }
                } else {
                    PairKind::IdealBIrreducible { ratio_order }
                }
            }
            CharPolyClass::RepeatedRoot { omega } => {
                // a repeated root forces b to be a unit: 4a = -b^2 mod p
                debug_assert!(b_is_unit);
                PairKind::UnitsRepeatedRoot { omega }
            }
        };
        Ok(PairAnalysis { ctx, a, b, kind })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// The eventual period of the orbit started at `x0`, with the branch
    /// and witnesses that justify it.
    pub fn predict(&self, x0: u64) -> PeriodPrediction {
        let ctx = self.ctx;
        let x0 = ctx.residue(x0);
        match &self.kind {
            PairKind::Degenerate => prediction(1, Branch::Thm1, Witness::default()),
            PairKind::IdealBReducible { alpha, beta, reduced_orders } => {
                if !ctx.is_unit(x0) {
                    return prediction(1, Branch::X0InP, Witness::default());
                }
                if x0 == *alpha || x0 == *beta {
                    return prediction(
                        1,
                        Branch::RootHit,
                        Witness { valuation: Some(ctx.e()), ..Witness::default() },
                    );
                }
                let k = contact_depth(ctx, x0, *alpha, *beta);
                let order = reduced_orders[k as usize];
                let branch = if k > 0 { Branch::P2 } else { Branch::P1 };
                prediction(
                    order,
                    branch,
                    Witness {
                        ratio_order: Some(order),
                        valuation: (k > 0).then_some(k),
                        ..Witness::default()
                    },
                )
            }
            PairKind::IdealBIrreducible { ratio_order } => {
                if !ctx.is_unit(x0) {
                    return prediction(1, Branch::X0InP, Witness::default());
                }
                prediction(
                    *ratio_order,
                    Branch::P3,
                    Witness { ratio_order: Some(*ratio_order), ..Witness::default() },
                )
            }
            PairKind::UnitsReducible {
                alpha,
                beta,
                reduced_orders,
                omega1,
                omega2,
                residue_order,
            } => {
                if x0 == *alpha || x0 == *beta {
                    return prediction(
                        1,
                        Branch::P6Zero,
                        Witness { valuation: Some(ctx.e()), ..Witness::default() },
                    );
                }
                let k = contact_depth(ctx, x0, *alpha, *beta);
                if k > 0 {
                    let order = reduced_orders[k as usize];
                    return prediction(
                        order,
                        Branch::P6ZeroDiv,
                        Witness {
                            ratio_order: Some(order),
                            valuation: Some(k),
                            ..Witness::default()
                        },
                    );
                }
                let p = ctx.p();
                let pi = x0 % p;
                // cross-ratio of the seed against the two residue roots
                let v = (pi + p - omega1) % p
                    * zpe::pow_mod((pi + p - omega2) % p, p - 2, p)
                    % p;
                let m = *residue_order;
                if v != 1 && zpe::pow_mod(v, m, p) == 1 {
                    prediction(
                        m - 1,
                        Branch::P4,
                        Witness {
                            residue_order: Some(m),
                            in_omega: Some(true),
                            ..Witness::default()
                        },
                    )
                } else {
                    prediction(
                        reduced_orders[0],
                        Branch::P5,
                        Witness {
                            ratio_order: Some(reduced_orders[0]),
                            residue_order: Some(m),
                            in_omega: Some(false),
                            ..Witness::default()
                        },
                    )
                }
            }
            PairKind::UnitsIrreducible { quad, omega1, omega2, residue_order, ratio_order } => {
                let pi = quad.field_elem(x0, 0);
                let v = quad.field_mul(
                    quad.field_sub(pi, *omega1),
                    quad
                        .field_inverse(quad.field_sub(pi, *omega2))
                        .expect("extension roots lie outside GF(p)"),
                );
                let m = *residue_order;
                if v != quad.field_one() && quad.field_pow(v, m) == quad.field_one() {
                    prediction(
                        m - 1,
                        Branch::P7,
                        Witness {
                            residue_order: Some(m),
                            in_omega: Some(true),
                            ..Witness::default()
                        },
                    )
                } else {
                    prediction(
                        *ratio_order,
                        Branch::P8,
                        Witness {
                            ratio_order: Some(*ratio_order),
                            residue_order: Some(m),
                            in_omega: Some(false),
                            ..Witness::default()
                        },
                    )
                }
            }
            PairKind::UnitsRepeatedRoot { omega } => {
                let p = ctx.p();
                if x0 % p != *omega {
                    return prediction(p - 1, Branch::P9, Witness::default());
                }
                // f(x0) measures how closely the seed approximates a true
                // fixed point of the doubled map
                let fx = ctx.sub(ctx.mul(x0, x0), ctx.add(ctx.mul(self.b, x0), self.a));
                if fx == 0 {
                    return prediction(
                        1,
                        Branch::P10Zero,
                        Witness { valuation: Some(ctx.e()), ..Witness::default() },
                    );
                }
                let k = ctx.valuation(fx);
                let mut period = ctx.modulus();
                for _ in 0..k {
                    period /= p;
                }
                prediction(
                    period,
                    Branch::P10ZeroDiv,
                    Witness { valuation: Some(k), ..Witness::default() },
                )
            }
        }
    }

    /// Periods this pair can possibly produce, as a pruning aid for
    /// parameter search. May overapproximate (repeated-root pairs), never
    /// underapproximates.
    fn period_candidates(&self) -> Vec<u64> {
        let ctx = self.ctx;
        let mut candidates = match &self.kind {
            PairKind::Degenerate => vec![1],
            PairKind::IdealBReducible { reduced_orders, .. } => {
                let mut c = vec![1];
                c.extend_from_slice(reduced_orders);
                c
            }
            PairKind::IdealBIrreducible { ratio_order } => vec![1, *ratio_order],
            PairKind::UnitsReducible { reduced_orders, residue_order, .. } => {
                let mut c = vec![1, residue_order - 1];
                c.extend_from_slice(&reduced_orders[1..]);
                if *residue_order < ctx.p() - 1 {
                    c.push(reduced_orders[0]);
                }
                c
            }
            PairKind::UnitsIrreducible { residue_order, ratio_order, .. } => {
                let mut c = vec![residue_order - 1];
                if *residue_order < ctx.p() + 1 {
                    c.push(*ratio_order);
                }
                c
            }
            PairKind::UnitsRepeatedRoot { .. } => {
                let mut c = vec![1, ctx.p() - 1];
                let mut q = ctx.modulus();
                for _ in 1..ctx.e() {
                    q /= ctx.p();
                    c.push(q);
                }
                c
            }
        };
        candidates.sort_unstable();
        candidates.dedup();
        candidates
    }
}

/// Highest depth at which the seed meets either root.
fn contact_depth(ctx: &RingContext, x0: u64, alpha: u64, beta: u64) -> u32 {
    // the root difference is a unit, so at most one valuation is positive
    ctx.valuation(ctx.sub(x0, alpha))
        .max(ctx.valuation(ctx.sub(x0, beta)))
}

/// Orders of the root ratio at every reduction depth `0..e`.
fn reduced_ratio_orders(ctx: &RingContext, alpha: u64, beta: u64) -> Result<Vec<u64>> {
    let ratio = ctx.mul(alpha, ctx.inverse(beta)?);
    let mut orders = Vec::with_capacity(ctx.e() as usize);
    orders.push(ctx.mult_order(ratio)?);
    for k in 1..ctx.e() {
        let reduced = ctx.reduced_context(k)?;
        orders.push(reduced.mult_order(ctx.reduce(ratio, k)?)?);
    }
    Ok(orders)
}

/// Predicts the eventual period of a single triple.
pub fn predict_period(ctx: &RingContext, a: u64, b: u64, x0: u64) -> Result<PeriodPrediction> {
    Ok(PairAnalysis::new(ctx, a, b)?.predict(x0))
}

/// A multiset of periods with exact (u128) counts, ordered by period.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PeriodHistogram {
    counts: BTreeMap<u64, u128>,
}

impl PeriodHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` occurrences of `period`; zero counts leave no row.
    pub fn record(&mut self, period: u64, count: u128) {
        if count > 0 {
            *self.counts.entry(period).or_insert(0) += count;
        }
    }

    /// Removes occurrences previously recorded; panics on underflow since
    /// that would mean the caller's bookkeeping is broken.
    pub(crate) fn remove(&mut self, period: u64, count: u128) {
        if count == 0 {
            return;
        }
        let entry = self.counts.get_mut(&period).expect("removing an absent period");
        *entry = entry.checked_sub(count).expect("histogram count underflow");
        if *entry == 0 {
            self.counts.remove(&period);
        }
    }

    pub fn get(&self, period: u64) -> u128 {
        self.counts.get(&period).copied().unwrap_or(0)
    }

    /// Rows in ascending period order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u128)> + '_ {
        self.counts.iter().map(|(&period, &count)| (period, count))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    pub fn merge(&mut self, other: &PeriodHistogram) {
        for (period, count) in other.iter() {
            self.record(period, count);
        }
    }
}

impl FromIterator<(u64, u128)> for PeriodHistogram {
    fn from_iter<T: IntoIterator<Item = (u64, u128)>>(iter: T) -> Self {
        let mut histogram = PeriodHistogram::new();
        for (period, count) in iter {
            histogram.record(period, count);
        }
        histogram
    }
}

/// One row of the closed-form count table: `count` triples fall through
/// `branch` with eventual period `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contribution {
    pub branch: Branch,
    pub period: u64,
    pub count: u128,
}

/// The complete closed-form table for Z_{p^e}: every branch's periods with
/// exact triple counts, sorted by branch then period. Counting is over all
/// `p^{3e}` triples; no orbit is ever simulated.
pub fn contributions(ctx: &RingContext) -> Result<Vec<Contribution>> {
    if ctx.p() <= 3 || ctx.e() < 2 {
        return Err(Error::UnsupportedContext { p: ctx.p(), e: ctx.e() });
    }
    let p = ctx.p();
    let e = ctx.e();
    let pu = p as u128;
    // p^n as u128; exponents reach 3e - 1 < 93 bits under the modulus cap
    let pw = |n: u32| pu.pow(n);
    // p^n as u64 for period values (these stay below the modulus)
    let pq = |n: u32| p.pow(n);

    let mut rows = Vec::new();
    let mut push = |branch: Branch, period: u64, count: u128| {
        rows.push(Contribution { branch, period, count });
    };

    // --- a in (p): one fixed point, all p^{2e-1} (a, b) pairs, all seeds ---
    push(Branch::Thm1, 1, pw(3 * e - 1));

    // --- b in (p), a a unit ---
    // non-unit seeds collapse regardless of root structure
    push(Branch::X0InP, 1, (pu - 1) * pw(3 * e - 3));
    // seeds sitting exactly on a root of a split polynomial stay there
    push(Branch::RootHit, 1, (pu - 1) * pw(2 * e - 2));
    // split case, seed clear of the roots: the ratio order is 2*p^{e-v(b)},
    // collapsing to 2 when b = 0
    push(Branch::P1, 2, (pu - 3) * (pu - 1) * pw(2 * e - 2) / 2);
    for k in 1..e {
        push(
            Branch::P1,
            2 * pq(e - k),
            (pu - 3) * (pu - 1) * (pu - 1) * pw(3 * e - k - 3) / 2,
        );
    }
    // split case, seed meeting a root to depth k: order at reduced depth
    push(Branch::P2, 2, (e as u128 - 1) * (pu - 1) * (pu - 1) * pw(2 * e - 2));
    for k in 1..e {
        for s in 1..(e - k) {
            push(
                Branch::P2,
                2 * pq(e - k - s),
                (pu - 1) * (pu - 1) * (pu - 1) * pw(3 * e - k - s - 3),
            );
        }
    }
    // inert case: every unit seed shares the extension ratio order
    push(Branch::P3, 2, (pu - 1) * (pu - 1) * pw(2 * e - 2) / 2);
    for k in 1..e {
        push(
            Branch::P3,
            2 * pq(e - k),
            (pu - 1) * (pu - 1) * (pu - 1) * pw(3 * e - k - 3) / 2,
        );
    }

    // --- a, b units, split polynomial ---
    // seeds exactly on a root
    push(Branch::P6Zero, 1, (pu - 3) * (pu - 1) * pw(2 * e - 2));
    // cross-ratio inside the subgroup generated by u = omega1/omega2 of
    // size k: period k - 1, aggregated over all ratio orders k * p^i
    for &k in divisors_above(p - 1, 2).iter() {
        let phi_sum: u128 = (0..e).map(|i| zpe::euler_phi(k * pq(i)) as u128).sum();
        push(
            Branch::P4,
            k - 1,
            (k as u128 - 1) * (pu - 1) * pw(2 * e - 2) * phi_sum / 2,
        );
    }
    // cross-ratio outside the subgroup: the full ratio order k1 * p^i; only
    // proper subgroups (k1 < p - 1) leave room outside
    for &k1 in divisors_above(p - 1, 2).iter().filter(|&&k1| k1 < p - 1) {
        for i in 0..e {
            let order = k1 * pq(i);
            push(
                Branch::P5,
                order,
                (pu - k1 as u128 - 1) * (pu - 1) * (zpe::euler_phi(order) as u128 / 2)
                    * pw(2 * e - 2),
            );
        }
    }
    // seed meets a root to depth k3: reduced orders k1 * p^i survive only
    // up to precision e - k3
    for k3 in 1..e {
        for &k1 in divisors_above(p - 1, 2).iter() {
            for i in 0..(e - k3) {
                let order = k1 * pq(i);
                push(
                    Branch::P6ZeroDiv,
                    order,
                    zpe::euler_phi(order) as u128 * (pu - 1) * (pu - 1) * pw(2 * e - 2),
                );
            }
        }
    }

    // --- a, b units, inert polynomial: same shape over GF(p^2) ---
    for &k in divisors_above(p + 1, 2).iter() {
        let phi_sum: u128 = (0..e).map(|i| zpe::euler_phi(k * pq(i)) as u128).sum();
        push(
            Branch::P7,
            k - 1,
            (k as u128 - 1) * (pu - 1) * pw(2 * e - 2) * phi_sum / 2,
        );
    }
    // the cross-ratio ranges over the norm-one subgroup, p + 1 elements, so
    // the count coefficient is p - (k1 - 1) rather than p - k1 - 1
    for &k1 in divisors_above(p + 1, 2).iter().filter(|&&k1| k1 < p + 1) {
        for i in 0..e {
            let order = k1 * pq(i);
            push(
                Branch::P8,
                order,
                (pu - k1 as u128 + 1) * (pu - 1) * (zpe::euler_phi(order) as u128 / 2)
                    * pw(2 * e - 2),
            );
        }
    }

    // --- a, b units, repeated root ---
    push(Branch::P9, p - 1, (pu - 1) * (pu - 1) * pw(3 * e - 3));
    push(Branch::P10Zero, 1, (pu - 1) * pw(2 * e - 2));
    for k in 1..e {
        push(
            Branch::P10ZeroDiv,
            pq(e - k),
            (pu - 1) * (pu - 1) * pw(3 * e - k - 3),
        );
    }

    rows.sort_by_key(|row| (row.branch, row.period));
    Ok(rows)
}

/// Divisors of `n` strictly greater than `floor`.
fn divisors_above(n: u64, floor: u64) -> Vec<u64> {
    zpe::divisors(n).into_iter().filter(|&d| d > floor).collect()
}

/// The closed-form period distribution for one `(a, b)` class, aggregated
/// from [`contributions`].
pub fn distribution_table(ctx: &RingContext, case: CaseFilter) -> Result<PeriodHistogram> {
    let mut histogram = PeriodHistogram::new();
    for row in contributions(ctx)? {
        if case.includes_class(row.branch.pair_class()) {
            histogram.record(row.period, row.count);
        }
    }
    debug_assert_eq!(histogram.total(), case.cardinality(ctx));
    Ok(histogram)
}

/// Finds up to `max_results` triples whose predicted eventual period equals
/// `target`, in lexicographic `(a, b, x0)` order.
pub fn search_params(
    ctx: &RingContext,
    target: u64,
    max_results: usize,
) -> Result<Vec<GeneratorParams>> {
    if ctx.p() <= 3 || ctx.e() < 2 {
        return Err(Error::UnsupportedContext { p: ctx.p(), e: ctx.e() });
    }
    let m = ctx.modulus();
    let mut results = Vec::new();
    'pairs: for a in 0..m {
        for b in 0..m {
            let pair = PairAnalysis::new(ctx, a, b)?;
            if !pair.period_candidates().contains(&target) {
                continue;
            }
            for x0 in 0..m {
                if pair.predict(x0).period == target {
                    results.push(GeneratorParams { a, b, x0 });
                    if results.len() >= max_results {
                        break 'pairs;
                    }
                }
            }
        }
    }
    Ok(results)
}
