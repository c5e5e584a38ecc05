//! Command-line front end: every library capability behind a subcommand,
//! with text, CSV, and structured (JSON) output and stable exit codes.
//!
//! Exit codes: 0 = completed with the expected outcome; 3 = completed and
//! findings are present (a Wall-Sun-Sun prime, a conjecture witness, a
//! disagreement, a failed suite — reported on stdout, never suppressed);
//! 2 = usage, domain, or internal error; 4 = capacity exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use fibkit::conjectures::{self, ConjectureFinding, PhiAnalogyRow};
use fibkit::verify::{run_suites, SuiteReport, VerifyLevel};
use fibkit::wallsun::scan::{render_report, scan, summary_line, ScanOptions, ScanSummary};
use fibkit::{
    equivalence_report, equivalence_scan, fib_pair_mod, order_mod, pisano, wss_check,
    EquivalenceReport, Error, WssReport,
};

const EXIT_FINDINGS: u8 = 3;
const EXIT_ERROR: u8 = 2;
const EXIT_CAPACITY: u8 = 4;

/// Environment variable naming a directory for default checkpoint files.
const CHECKPOINT_DIR_VAR: &str = "FIBKIT_CHECKPOINT_DIR";

#[derive(Parser)]
#[command(
    name = "fibkit",
    version,
    about = "Fibonacci arithmetic modulo machine integers: entry points, Pisano periods, \
             Wall-Sun-Sun scans, and verification suites"
)]
struct Cli {
    /// Output format for result rows.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Space-separated key=value pairs.
    Text,
    /// Comma-separated values, one row per record.
    Csv,
    /// JSON, one document per command.
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// F_k and F_{k+1} reduced modulo m.
    Fib {
        k: u64,
        #[arg(long = "mod", value_name = "M")]
        modulus: u64,
    },
    /// Entry point record of n: the least index whose Fibonacci number n divides.
    Kappa { n: u64 },
    /// Pisano period record of n: entry point, order, and period.
    Pi { n: u64 },
    /// Multiplicative order of z modulo n.
    Order {
        z: u64,
        #[arg(long = "mod", value_name = "N")]
        modulus: u64,
    },
    /// Wall-Sun-Sun testing: a single prime or a checkpointed range scan.
    Wss {
        #[command(subcommand)]
        command: WssCommand,
    },
    /// The three equivalent "not Wall-Sun-Sun" criteria, each computed independently.
    Equiv(EquivArgs),
    /// Desk-scale sweeps of the period conjectures.
    Conjecture {
        #[command(subcommand)]
        command: ConjectureCommand,
    },
    /// Executable verification suites for the underlying identities.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum WssCommand {
    /// Test one prime for the Wall-Sun-Sun property.
    Check { p: u64 },
    /// Scan a prime range, recording near misses and any discovery.
    Scan {
        /// Inclusive lower bound of the range.
        #[arg(long, default_value_t = 2)]
        from: u64,
        /// Inclusive upper bound of the range.
        #[arg(long)]
        to: u64,
        /// Worker count; 0 means one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Near-miss threshold on min(alpha, p - alpha).
        #[arg(long = "near-miss", default_value_t = 100)]
        near_miss: u64,
        /// Checkpoint file; defaults to a file under $FIBKIT_CHECKPOINT_DIR if set.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from the checkpoint instead of starting over.
        #[arg(long)]
        resume: bool,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct EquivArgs {
    /// Prime to test.
    #[arg(value_name = "P", required = true)]
    p: Option<u64>,

    #[command(subcommand)]
    command: Option<EquivCommand>,
}

#[derive(Subcommand)]
enum EquivCommand {
    /// Evaluate every prime up to a bound, reporting any disagreement.
    Scan {
        /// Inclusive upper bound.
        #[arg(long)]
        to: u64,
        /// Worker count; 0 means one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum ConjectureCommand {
    /// n ≥ 2 with π(n²) = π(n); expected findings are 6 and 12 only.
    FixedPoints {
        #[arg(long)]
        limit: u64,
    },
    /// n that fail n | π(n²); expected empty.
    Divisibility {
        #[arg(long)]
        limit: u64,
    },
    /// n violating π(n) ≤ π(n²) ≤ n·π(n); expected empty.
    Bounds {
        #[arg(long)]
        limit: u64,
    },
    /// Prime powers where π(p^e) ≠ p^(e-1)·π(p); expected empty.
    Lifting {
        /// Largest prime to lift.
        #[arg(long)]
        limit: u64,
        /// Highest exponent to check (at least 2).
        #[arg(long = "max-exponent", default_value_t = 3)]
        max_exponent: u32,
    },
    /// Side-by-side table of φ multiplicativity and π lcm-composition.
    PhiAnalogy {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run the identity suites at quick or full desk-scale bounds.
    Lemmas {
        #[arg(long, value_enum)]
        level: CliVerifyLevel,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliVerifyLevel {
    Quick,
    Full,
}

/// Multiplicative-order answer in output form.
#[derive(Debug, Serialize, Deserialize)]
struct OrderReport {
    z: u64,
    modulus: u64,
    order: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Capacity { .. } => EXIT_CAPACITY,
        _ => EXIT_ERROR,
    }
}

fn json<T: Serialize>(value: &T) -> fibkit::Result<String> {
    serde_json::to_string(value)
        .map_err(|e| fibkit::Error::Internal(format!("serialization failed: {e}")))
}

fn run(cli: &Cli) -> fibkit::Result<u8> {
    match &cli.command {
        Command::Fib { k, modulus } => {
            let pair = fib_pair_mod(*k, *modulus)?;
            match cli.format {
                OutputFormat::Text => println!(
                    "index={} modulus={} f={} f_next={}",
                    pair.index, pair.modulus, pair.f, pair.f_next
                ),
                OutputFormat::Csv => {
                    println!("{},{},{},{}", pair.index, pair.modulus, pair.f, pair.f_next)
                }
                OutputFormat::Structured => println!("{}", json(&pair)?),
            }
            Ok(0)
        }
        Command::Kappa { n } | Command::Pi { n } => {
            let rec = pisano(*n)?;
            match cli.format {
                OutputFormat::Text => {
                    println!("n={} kappa={} omega={} pi={}", rec.n, rec.kappa, rec.omega, rec.pi)
                }
                OutputFormat::Csv => println!("{},{},{},{}", rec.n, rec.kappa, rec.omega, rec.pi),
                OutputFormat::Structured => println!("{}", json(&rec)?),
            }
            Ok(0)
        }
        Command::Order { z, modulus } => {
            let multiple = fibkit::carmichael(&fibkit::factorize(*modulus)?);
            let order = order_mod(*z, *modulus, multiple)?;
            let report = OrderReport { z: *z, modulus: *modulus, order };
            match cli.format {
                OutputFormat::Text => {
                    println!("z={} modulus={} order={}", report.z, report.modulus, report.order)
                }
                OutputFormat::Csv => println!("{},{},{}", report.z, report.modulus, report.order),
                OutputFormat::Structured => println!("{}", json(&report)?),
            }
            Ok(0)
        }
        Command::Wss { command } => match command {
            WssCommand::Check { p } => {
                let report = wss_check(*p)?;
                print_wss_report(&report, cli.format)?;
                Ok(if report.is_wss { EXIT_FINDINGS } else { 0 })
            }
            WssCommand::Scan { from, to, jobs, near_miss, checkpoint, resume } => {
                let mut opts = ScanOptions::new(*from, *to);
                opts.near_miss_threshold = *near_miss;
                opts.jobs = *jobs;
                opts.checkpoint_path = checkpoint.clone().or_else(|| default_checkpoint(*from, *to));
                opts.resume = *resume;
                let summary = scan(&opts)?;
                print_scan_summary(&summary, cli.format)?;
                eprintln!("{}", summary_line(&summary));
                Ok(if summary.wss_found.is_empty() { 0 } else { EXIT_FINDINGS })
            }
        },
        Command::Equiv(args) => match (&args.p, &args.command) {
            (Some(p), None) => {
                let report = equivalence_report(*p)?;
                print_equivalence_report(&report, cli.format)?;
                Ok(if report.agree { 0 } else { EXIT_FINDINGS })
            }
            (None, Some(EquivCommand::Scan { to, jobs })) => {
                let reports = equivalence_scan(*to, *jobs)?;
                let disagreements: Vec<&EquivalenceReport> =
                    reports.iter().filter(|r| !r.agree).collect();
                for report in &disagreements {
                    print_equivalence_report(report, cli.format)?;
                }
                eprintln!(
                    "equivalence checked at {} primes up to {}: {} disagreements",
                    reports.len(),
                    to,
                    disagreements.len()
                );
                Ok(if disagreements.is_empty() { 0 } else { EXIT_FINDINGS })
            }
            _ => unreachable!("clap enforces exactly one of prime or scan"),
        },
        Command::Conjecture { command } => run_conjecture(command, cli.format),
        Command::Verify { command } => match command {
            VerifyCommand::Lemmas { level } => {
                let level = match level {
                    CliVerifyLevel::Quick => VerifyLevel::Quick,
                    CliVerifyLevel::Full => VerifyLevel::Full,
                };
                let reports = run_suites(level)?;
                print_suite_reports(&reports, cli.format)?;
                let failed = reports.iter().filter(|r| !r.passed()).count();
                eprintln!("suites: {} of {} passed", reports.len() - failed, reports.len());
                Ok(if failed == 0 { 0 } else { EXIT_FINDINGS })
            }
        },
    }
}

fn run_conjecture(command: &ConjectureCommand, format: OutputFormat) -> fibkit::Result<u8> {
    let (what, limit, findings): (&str, u64, Vec<ConjectureFinding>) = match command {
        ConjectureCommand::FixedPoints { limit } => {
            ("fixed-point", *limit, conjectures::fixed_point_scan(*limit)?)
        }
        ConjectureCommand::Divisibility { limit } => {
            ("divisibility", *limit, conjectures::divisibility_scan(*limit)?)
        }
        ConjectureCommand::Bounds { limit } => ("bounds", *limit, conjectures::bounds_scan(*limit)?),
        ConjectureCommand::Lifting { limit, max_exponent } => {
            ("lifting", *limit, conjectures::lifting_scan(*limit, *max_exponent)?)
        }
        ConjectureCommand::PhiAnalogy { limit } => {
            let rows = conjectures::phi_analogy_report(*limit)?;
            print_phi_rows(&rows, format)?;
            eprintln!("phi analogy verified on {} coprime pairs up to {}", rows.len(), limit);
            return Ok(0);
        }
    };
    match format {
        OutputFormat::Text => {
            for f in &findings {
                println!("{}", f.n);
            }
        }
        OutputFormat::Csv => {
            for f in &findings {
                println!("{}", f.csv_row());
            }
        }
        OutputFormat::Structured => println!("{}", json(&findings)?),
    }
    eprintln!("{what} scan to {limit}: {} findings", findings.len());
    Ok(if findings.is_empty() { 0 } else { EXIT_FINDINGS })
}

fn print_wss_report(report: &WssReport, format: OutputFormat) -> fibkit::Result<()> {
    match format {
        OutputFormat::Text => println!(
            "p={} legendre={} index={} f_mod_p2={} alpha={} near_miss_distance={} is_wss={}",
            report.p,
            report.legendre.value(),
            report.index,
            report.f_mod_p2.value,
            report.alpha.value,
            report.near_miss_distance(),
            report.is_wss
        ),
        OutputFormat::Csv => println!(
            "{},{},{},{},{},{}",
            report.p,
            report.legendre.value(),
            report.index,
            report.alpha.value,
            report.near_miss_distance(),
            report.is_wss
        ),
        OutputFormat::Structured => println!("{}", json(report)?),
    }
    Ok(())
}

fn print_scan_summary(summary: &ScanSummary, format: OutputFormat) -> fibkit::Result<()> {
    match format {
        OutputFormat::Text => {
            for nm in &summary.near_misses {
                println!(
                    "p={} alpha={} near_miss_distance={} is_wss={}",
                    nm.p,
                    nm.alpha,
                    nm.distance,
                    nm.alpha == 0
                );
            }
        }
        OutputFormat::Csv => print!("{}", render_report(summary)),
        OutputFormat::Structured => println!("{}", json(summary)?),
    }
    Ok(())
}

fn print_equivalence_report(report: &EquivalenceReport, format: OutputFormat) -> fibkit::Result<()> {
    match format {
        OutputFormat::Text => println!(
            "p={} square_criterion={} valuation_criterion={} period_criterion={} agree={}",
            report.p,
            report.square_criterion,
            report.valuation_criterion,
            report.period_criterion,
            report.agree
        ),
        OutputFormat::Csv => println!(
            "{},{},{},{},{}",
            report.p,
            report.square_criterion,
            report.valuation_criterion,
            report.period_criterion,
            report.agree
        ),
        OutputFormat::Structured => println!("{}", json(report)?),
    }
    Ok(())
}

fn print_phi_rows(rows: &[PhiAnalogyRow], format: OutputFormat) -> fibkit::Result<()> {
    match format {
        OutputFormat::Text => {
            for r in rows {
                println!(
                    "m={} n={} phi_product={} phi_mn={} pi_lcm={} pi_mn={}",
                    r.m, r.n, r.phi_product, r.phi_mn, r.pi_lcm, r.pi_mn
                );
            }
        }
        OutputFormat::Csv => {
            for r in rows {
                println!("{},{},{},{},{},{}", r.m, r.n, r.phi_product, r.phi_mn, r.pi_lcm, r.pi_mn);
            }
        }
        OutputFormat::Structured => println!("{}", json(&rows)?),
    }
    Ok(())
}

fn print_suite_reports(reports: &[SuiteReport], format: OutputFormat) -> fibkit::Result<()> {
    match format {
        OutputFormat::Text => {
            for r in reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                println!("{}: {} cases, {} violations, {status}", r.name, r.cases, r.violations.len());
                for v in &r.violations {
                    println!("  violation: {v}");
                }
            }
        }
        OutputFormat::Csv => {
            for r in reports {
                println!("{},{},{}", r.name, r.cases, r.violations.len());
            }
        }
        OutputFormat::Structured => println!("{}", json(&reports)?),
    }
    Ok(())
}

/// Default checkpoint path when the scan has none: a range-named file under
/// $FIBKIT_CHECKPOINT_DIR, if that variable is set.
fn default_checkpoint(from: u64, to: u64) -> Option<PathBuf> {
    std::env::var_os(CHECKPOINT_DIR_VAR)
        .map(|dir| PathBuf::from(dir).join(format!("wss-scan-{from}-{to}.toml")))
}
