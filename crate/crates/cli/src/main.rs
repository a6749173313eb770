//! Command-line driver: single-shot orbit queries, closed-form period
//! tables, exhaustive censuses, three-way verification, and parameter
//! search for inversive congruential generators over Z_{p^e}.
//!
//! Exit codes: 0 success (including verify runs that only warn), 1 when a
//! verification or census cross-check found a real disagreement, 2 for
//! usage errors and invalid arguments.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use iprng_core::analyzer;
use iprng_core::census::{self, CaseFilter, CensusOptions, Engine};
use iprng_core::iprng::{self, GeneratorParams};
use iprng_core::zpe::RingContext;
use output::ReportMeta;

#[derive(Parser)]
#[command(
    name = "iprng",
    version,
    about = "Period analysis of inversive congruential generators x -> a/x + b over Z_{p^e}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Output encodings for table-shaped results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ContextArgs {
    /// Odd prime base of the modulus
    #[arg(long)]
    p: u64,
    /// Exponent: the modulus is p^e
    #[arg(long)]
    e: u32,
}

#[derive(Args)]
struct TripleArgs {
    #[command(flatten)]
    ring: ContextArgs,
    /// Multiplier
    #[arg(long)]
    a: u64,
    /// Increment
    #[arg(long)]
    b: u64,
    /// Seed
    #[arg(long)]
    x0: u64,
}

impl TripleArgs {
    /// Builds the ring and checks every parameter is a residue in it.
    fn resolve(&self) -> Result<(RingContext, GeneratorParams), Box<dyn std::error::Error>> {
        let ctx = RingContext::new(self.ring.p, self.ring.e)?;
        for (name, value) in [("a", self.a), ("b", self.b), ("x0", self.x0)] {
            if value >= ctx.modulus() {
                return Err(format!(
                    "--{name} {value} is out of range for modulus {}",
                    ctx.modulus()
                )
                .into());
            }
        }
        Ok((ctx, GeneratorParams { a: self.a, b: self.b, x0: self.x0 }))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Walk one orbit and report its exact preperiod, period, and cycle entry
    Period {
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Predict the eventual period from the parameter algebra, without walking
    Predict {
        #[command(flatten)]
        triple: TripleArgs,
        /// Also print the witnesses behind the decision
        #[arg(long)]
        explain: bool,
    },
    /// Print the closed-form period distribution for a parameter class
    Table {
        #[command(flatten)]
        ring: ContextArgs,
        /// Parameter class: a-in-p, b-in-p, units, or all
        #[arg(long, default_value = "all")]
        case: CaseFilter,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep every triple in a class and tally the observed periods
    Census {
        #[command(flatten)]
        ring: ContextArgs,
        /// Parameter class: a-in-p, b-in-p, units, or all
        #[arg(long, default_value = "all")]
        case: CaseFilter,
        /// oracle walks orbits, predictor evaluates the closed analysis,
        /// both runs the two side by side and records disagreements
        #[arg(long, default_value = "predictor")]
        engine: Engine,
        /// Worker threads; the report does not depend on this
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check oracle sweep, predictor sweep, and closed forms per class
    Verify {
        #[command(flatten)]
        ring: ContextArgs,
        /// Worker threads; the report does not depend on this
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// List the lexicographically first triples with a given predicted period
    Search {
        #[command(flatten)]
        ring: ContextArgs,
        /// Eventual period to look for
        #[arg(long)]
        period: u64,
        /// Maximum number of triples to list
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match command {
        Command::Period { triple } => {
            let (ctx, params) = triple.resolve()?;
            let result = iprng::eventual_period(&ctx, &params);
            println!(
                "period={} preperiod={} cycle_rep={}",
                result.period, result.preperiod, result.cycle_rep
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Predict { triple, explain } => {
            let (ctx, params) = triple.resolve()?;
            let prediction = analyzer::predict_period(&ctx, params.a, params.b, params.x0)?;
            let mut line = format!("period={} branch={}", prediction.period, prediction.branch);
            if explain {
                let witness = prediction.witness;
                if let Some(depth) = witness.valuation {
                    line.push_str(&format!(" valuation={depth}"));
                }
                if let Some(order) = witness.ratio_order {
                    line.push_str(&format!(" ratio_order={order}"));
                }
                if let Some(order) = witness.residue_order {
                    line.push_str(&format!(" residue_order={order}"));
                }
                if let Some(inside) = witness.in_omega {
                    line.push_str(&format!(" in_omega={inside}"));
                }
            }
            println!("{line}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { ring, case, format, out } => {
            let ctx = RingContext::new(ring.p, ring.e)?;
            let histogram = analyzer::distribution_table(&ctx, case)?;
            let meta = ReportMeta {
                p: ring.p,
                e: ring.e,
                case: case.name(),
                engine: "closed-form",
            };
            let text = match format {
                Format::Csv => output::histogram_csv(&histogram),
                Format::Json => output::report_json(&meta, &histogram, &[], &[]),
            };
            output::emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Census { ring, case, engine, workers, format, out } => {
            let ctx = RingContext::new(ring.p, ring.e)?;
            let options = CensusOptions { case, engine, workers, ..CensusOptions::default() };
            let started = Instant::now();
            let report = census::run_census(&ctx, &options)?;
            eprintln!(
                "census: swept {} triples in {:.2?}",
                report.histogram.total(),
                started.elapsed()
            );
            let meta = ReportMeta {
                p: report.p,
                e: report.e,
                case: report.case.name(),
                engine: report.engine.name(),
            };
            let text = match format {
                Format::Csv => output::histogram_csv(&report.histogram),
                Format::Json => {
                    output::report_json(&meta, &report.histogram, &report.mismatches, &[])
                }
            };
            if format == Format::Csv && !report.mismatches.is_empty() {
                eprintln!(
                    "warning: {} oracle/predictor disagreements not shown; use --format json",
                    report.mismatches.len()
                );
            }
            output::emit(&text, out.as_deref())?;
            if report.mismatches.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Verify { ring, workers } => {
            let ctx = RingContext::new(ring.p, ring.e)?;
            let report = census::verify(&ctx, workers, census::DEFAULT_SWEEP_BUDGET)?;
            println!("verify p={} e={}", report.p, report.e);
            for case in &report.cases {
                println!(
                    "  case {}: total={} periods={} diffs={} mismatches={}",
                    case.case,
                    case.histogram.total(),
                    case.histogram.len(),
                    case.diffs.len(),
                    case.mismatches.len()
                );
                for diff in &case.diffs {
                    println!(
                        "    period {}: oracle={} predictor={} closed-form={}",
                        diff.period, diff.oracle, diff.predictor, diff.closed_form
                    );
                }
                for miss in case.mismatches.iter().take(10) {
                    println!(
                        "    triple a={} b={} x0={}: oracle={} predicted={}",
                        miss.a, miss.b, miss.x0, miss.oracle, miss.predicted
                    );
                }
            }
            for warning in &report.warnings {
                println!("warning: {warning}");
            }
            if report.is_clean() {
                println!("result: ok (oracle, predictor, and closed forms agree)");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("result: MISMATCH");
                Ok(ExitCode::from(1))
            }
        }
        Command::Search { ring, period, max, format, out } => {
            let ctx = RingContext::new(ring.p, ring.e)?;
            let hits = analyzer::search_params(&ctx, period, max)?;
            let text = match format {
                Format::Csv => output::params_csv(&hits),
                Format::Json => output::search_json(ring.p, ring.e, period, &hits),
            };
            output::emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
