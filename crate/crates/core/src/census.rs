//! Exhaustive sweeps over `(a, b, x0)` triples and cross-engine checks.
//!
//! A census tallies the eventual period of every triple in a chosen `(a, b)`
//! class, either by simulating orbits (the oracle engine), by evaluating the
//! closed-form decision tree (the predictor engine), or by running both and
//! recording any disagreement per triple. [`verify`] goes one step further
//! and compares those sweeps against the closed-form count table, which
//! never touches individual triples at all.
//!
//! Sweeps partition the `(a, b)` plane into contiguous chunks handed to
//! worker threads; each worker owns its scratch tables and returns a partial
//! histogram, and partials are merged in chunk order. Since merging only
//! adds counts, the result is byte-for-byte independent of the worker count.

use std::fmt;
use std::str::FromStr;

use crate::analyzer::{self, PairClass, PeriodHistogram};
use crate::error::{Error, Result};
use crate::iprng::{inverse_table, OrbitOracle};
use crate::zpe::RingContext;

/// Which `(a, b)` class a sweep covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseFilter {
    /// `a` divisible by `p` (any `b`).
    AInP,
    /// `a` a unit, `b` divisible by `p`.
    BInP,
    /// `a` and `b` both units.
    Units,
    /// The whole plane.
    All,
}

impl CaseFilter {
    pub const ALL_CASES: [CaseFilter; 4] =
        [CaseFilter::AInP, CaseFilter::BInP, CaseFilter::Units, CaseFilter::All];

    /// The name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            CaseFilter::AInP => "a-in-p",
            CaseFilter::BInP => "b-in-p",
            CaseFilter::Units => "units",
            CaseFilter::All => "all",
        }
    }

    /// Number of `(a, b, x0)` triples in the class.
    pub fn cardinality(self, ctx: &RingContext) -> u128 {
        let p = ctx.p() as u128;
        let e = ctx.e();
        match self {
            CaseFilter::AInP => p.pow(3 * e - 1),
            CaseFilter::BInP => (p - 1) * p.pow(3 * e - 2),
            CaseFilter::Units => (p - 1) * (p - 1) * p.pow(3 * e - 2),
            CaseFilter::All => p.pow(3 * e),
        }
    }

    fn includes_pair(self, ctx: &RingContext, a: u64, b: u64) -> bool {
        match self {
            CaseFilter::AInP => !ctx.is_unit(a),
            CaseFilter::BInP => ctx.is_unit(a) && !ctx.is_unit(b),
            CaseFilter::Units => ctx.is_unit(a) && ctx.is_unit(b),
            CaseFilter::All => true,
        }
    }

    pub(crate) fn includes_class(self, class: PairClass) -> bool {
        match self {
            CaseFilter::AInP => class == PairClass::Degenerate,
            CaseFilter::BInP => class == PairClass::IdealB,
            CaseFilter::Units => class == PairClass::Units,
            CaseFilter::All => true,
        }
    }
}

impl fmt::Display for CaseFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        CaseFilter::ALL_CASES
            .into_iter()
            .find(|case| case.name() == s)
            .ok_or_else(|| format!("unknown case `{s}` (expected a-in-p, b-in-p, units, all)"))
    }
}

/// How periods are computed during a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Simulate every orbit.
    Oracle,
    /// Evaluate the closed-form decision tree.
    Predictor,
    /// Run both and record disagreements; the histogram reports the
    /// oracle's periods.
    Both,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Oracle => "oracle",
            Engine::Predictor => "predictor",
            Engine::Both => "both",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Engine::Oracle),
            "predictor" => Ok(Engine::Predictor),
            "both" => Ok(Engine::Both),
            other => Err(format!(
                "unknown engine `{other}` (expected oracle, predictor, both)"
            )),
        }
    }
}

/// Upper bound on sweep sizes unless the caller raises it explicitly.
pub const DEFAULT_SWEEP_BUDGET: u128 = 100_000_000;

/// Knobs for [`run_census`].
#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub case: CaseFilter,
    pub engine: Engine,
    /// Worker threads; the result does not depend on this.
    pub workers: usize,
    /// Maximum number of triples the sweep may visit.
    pub budget: u128,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            case: CaseFilter::All,
            engine: Engine::Predictor,
            workers: 1,
            budget: DEFAULT_SWEEP_BUDGET,
        }
    }
}

/// A triple where oracle and predictor disagreed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub a: u64,
    pub b: u64,
    pub x0: u64,
    pub oracle: u64,
    pub predicted: u64,
}

/// Outcome of one sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    pub e: u32,
    pub case: CaseFilter,
    pub engine: Engine,
    pub histogram: PeriodHistogram,
    /// Non-empty only for [`Engine::Both`], and then only on disagreement.
    pub mismatches: Vec<Mismatch>,
}

/// Tallies eventual periods over every triple of the chosen class.
pub fn run_census(ctx: &RingContext, options: &CensusOptions) -> Result<CensusReport> {
    if ctx.p() <= 3 || ctx.e() < 2 {
        return Err(Error::UnsupportedContext { p: ctx.p(), e: ctx.e() });
    }
    let triples = options.case.cardinality(ctx);
    if triples > options.budget {
        return Err(Error::SweepTooLarge { triples, budget: options.budget });
    }

    let m = ctx.modulus();
    let pairs: Vec<(u64, u64)> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| options.case.includes_pair(ctx, a, b))
        .collect();

    let inverses = match options.engine {
        Engine::Predictor => Vec::new(),
        Engine::Oracle | Engine::Both => inverse_table(ctx),
    };

    let workers = options.workers.clamp(1, pairs.len().max(1));
    let mut partials: Vec<Result<(PeriodHistogram, Vec<Mismatch>)>> =
        Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for w in 0..workers {
            let chunk = &pairs[w * pairs.len() / workers..(w + 1) * pairs.len() / workers];
            let inverses = &inverses;
            handles.push(scope.spawn(move || sweep_chunk(ctx, options.engine, chunk, inverses)));
        }
        for handle in handles {
            partials.push(handle.join().expect("census worker panicked"));
        }
    });

    let mut histogram = PeriodHistogram::new();
    let mut mismatches = Vec::new();
    for partial in partials {
        let (partial_histogram, partial_mismatches) = partial?;
        histogram.merge(&partial_histogram);
        mismatches.extend(partial_mismatches);
    }
    debug_assert_eq!(histogram.total(), triples);

    Ok(CensusReport {
        p: ctx.p(),
        e: ctx.e(),
        case: options.case,
        engine: options.engine,
        histogram,
        mismatches,
    })
}

/// Sweeps one contiguous run of `(a, b)` pairs over all seeds.
fn sweep_chunk(
    ctx: &RingContext,
    engine: Engine,
    chunk: &[(u64, u64)],
    inverses: &[u64],
) -> Result<(PeriodHistogram, Vec<Mismatch>)> {
    let m = ctx.modulus();
    let mut histogram = PeriodHistogram::new();
    let mut mismatches = Vec::new();
    match engine {
        Engine::Oracle => {
            let mut oracle = OrbitOracle::new(ctx, inverses);
            for &(a, b) in chunk {
                for x0 in 0..m {
                    histogram.record(oracle.period(a, b, x0), 1);
                }
            }
        }
        Engine::Predictor => {
            for &(a, b) in chunk {
                let pair = analyzer::PairAnalysis::new(ctx, a, b)?;
                for x0 in 0..m {
                    histogram.record(pair.predict(x0).period, 1);
                }
            }
        }
        Engine::Both => {
            let mut oracle = OrbitOracle::new(ctx, inverses);
            for &(a, b) in chunk {
                let pair = analyzer::PairAnalysis::new(ctx, a, b)?;
                for x0 in 0..m {
                    let simulated = oracle.period(a, b, x0);
                    let predicted = pair.predict(x0).period;
                    histogram.record(simulated, 1);
                    if simulated != predicted {
                        mismatches.push(Mismatch {
                            a,
                            b,
                            x0,
                            oracle: simulated,
                            predicted,
                        });
                    }
                }
            }
        }
    }
    Ok((histogram, mismatches))
}

/// Side-by-side period counts from the three sources for one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionDiff {
    pub period: u64,
    pub oracle: u128,
    pub predictor: u128,
    pub closed_form: u128,
}

/// Comparison outcome for one `(a, b)` class.
#[derive(Debug, Clone)]
pub struct CaseComparison {
    pub case: CaseFilter,
    /// The oracle's histogram (the other two agree with it when clean).
    pub histogram: PeriodHistogram,
    /// Rows where the three sources disagree.
    pub diffs: Vec<DistributionDiff>,
    /// Individual triples where the predictor missed.
    pub mismatches: Vec<Mismatch>,
}

/// Outcome of [`verify`]: every class checked three ways.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub p: u64,
    pub e: u32,
    pub cases: Vec<CaseComparison>,
    /// Notes about rows that are correct here but known to be printed
    /// differently in older reference tabulations.
    pub warnings: Vec<String>,
}

impl VerifyReport {
    /// True when every class agrees across all three sources.
    pub fn is_clean(&self) -> bool {
        self.cases
            .iter()
            .all(|case| case.diffs.is_empty() && case.mismatches.is_empty())
    }
}

/// A distribution row that older published tabulations report under a
/// different period than every engine here computes. Kept so `verify` can
/// flag the discrepancy instead of leaving users to puzzle over it when
/// they compare output against the older tables.
struct ReportedDeviation {
    p: u64,
    e: u32,
    case: CaseFilter,
    reported_period: u64,
    actual_period: u64,
    count: u128,
}

const REPORTED_DEVIATIONS: &[ReportedDeviation] = &[ReportedDeviation {
    p: 5,
    e: 3,
    case: CaseFilter::Units,
    reported_period: 10,
    actual_period: 15,
    count: 30_000,
}];

/// Runs oracle and predictor sweeps over each class and compares both
/// against the closed-form distribution table.
pub fn verify(ctx: &RingContext, workers: usize, budget: u128) -> Result<VerifyReport> {
    let mut cases = Vec::new();
    let mut warnings = Vec::new();
    for case in [CaseFilter::AInP, CaseFilter::BInP, CaseFilter::Units] {
        let report = run_census(
            ctx,
            &CensusOptions { case, engine: Engine::Both, workers, budget },
        )?;
        // the sweep recorded the oracle's periods; replaying the mismatches
        // turns that histogram into the predictor's
        let mut predictor = report.histogram.clone();
        for mismatch in &report.mismatches {
            predictor.remove(mismatch.oracle, 1);
            predictor.record(mismatch.predicted, 1);
        }
        let closed_form = analyzer::distribution_table(ctx, case)?;

        let mut periods: Vec<u64> = report
            .histogram
            .iter()
            .map(|(period, _)| period)
            .chain(predictor.iter().map(|(period, _)| period))
            .chain(closed_form.iter().map(|(period, _)| period))
            .collect();
        periods.sort_unstable();
        periods.dedup();
        let diffs: Vec<DistributionDiff> = periods
            .into_iter()
            .map(|period| DistributionDiff {
                period,
                oracle: report.histogram.get(period),
                predictor: predictor.get(period),
                closed_form: closed_form.get(period),
            })
            .filter(|diff| {
                !(diff.oracle == diff.predictor && diff.predictor == diff.closed_form)
            })
            .collect();

        for deviation in REPORTED_DEVIATIONS {
            let applies = deviation.p == ctx.p()
                && deviation.e == ctx.e()
                && deviation.case == case
                && report.histogram.get(deviation.actual_period) == deviation.count
                && report.histogram.get(deviation.reported_period) == 0;
            if applies {
                warnings.push(format!(
                    "case {}: the {} triples of period {} appear under period {} in older \
                     tabulations of this distribution; oracle, predictor, and closed form all \
                     agree on {}",
                    case.name(),
                    deviation.count,
                    deviation.actual_period,
                    deviation.reported_period,
                    deviation.actual_period,
                ));
            }
        }

        cases.push(CaseComparison {
            case,
            histogram: report.histogram,
            diffs,
            mismatches: report.mismatches,
        });
    }
    Ok(VerifyReport { p: ctx.p(), e: ctx.e(), cases, warnings })
}
