use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use modmethod_cli::checks::{self, Fixtures};
use modmethod_cli::commands::{self, EliminateArgs};
use modmethod_cli::report::RunReport;
use modmethod_core::unitsieve::DescentCase;

#[derive(Parser)]
#[command(name = "modmethod", version, about = "Exact checks for modular-method eliminations")]
struct Cli {
    /// Directory holding curves/, packets/, families/ and constraints/.
    #[arg(long, global = true, default_value = "fixtures")]
    fixtures: PathBuf,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Traces (elliptic) or Euler coefficients with RM split (genus 2) at primes above each q.
    Trace {
        curve: PathBuf,
        #[arg(required = true)]
        q: Vec<u64>,
    },
    /// Full local Euler factors at primes above each q.
    Euler {
        curve: PathBuf,
        #[arg(required = true)]
        q: Vec<u64>,
    },
    /// Igusa-Clebsch invariants of a genus-2 curve.
    Igusa { curve: PathBuf },
    /// Prime splitting in a built-in order.
    Split {
        order: String,
        #[arg(required = true)]
        q: Vec<u64>,
    },
    /// Standard and, optionally, refined elimination of packets against a family.
    Eliminate {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        packets: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Run refined elimination at this rational prime p.
        #[arg(long)]
        refined: Option<u64>,
        #[arg(long)]
        skip_ramified: bool,
        /// Residue primes "p:idx" known to be reducible.
        #[arg(long, value_delimiter = ',')]
        skip: Vec<String>,
    },
    /// Unit sieve for one descent case.
    Sieve {
        #[arg(long, value_parser = commands::parse_case)]
        case: DescentCase,
        #[arg(long)]
        constraints: PathBuf,
        /// Survivor bitset; a text summary goes next to it with extension .txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mod-7 congruence between an elliptic curve and the RM pair of a genus-2 curve.
    CheckCongruence {
        curve_e: PathBuf,
        curve_c: PathBuf,
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
    /// Euler factors at 3, valuations at 2, Igusa-Clebsch invariants and Frobenius orders.
    CheckInvariants,
    /// Every check, with skips for data that is not shipped.
    FullReport,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fx = Fixtures { dir: cli.fixtures.clone() };
    let name = match &cli.command {
        Command::Trace { .. } => "trace",
        Command::Euler { .. } => "euler",
        Command::Igusa { .. } => "igusa",
        Command::Split { .. } => "split",
        Command::Eliminate { .. } => "eliminate",
        Command::Sieve { .. } => "sieve",
        Command::CheckCongruence { .. } => "check-congruence",
        Command::CheckInvariants => "check-invariants",
        Command::FullReport => "full-report",
    };
    let mut report = RunReport::new(name, cli.seed);
    let result = match cli.command {
        Command::Trace { curve, q } => commands::trace(&mut report, &curve, &q, false),
        Command::Euler { curve, q } => commands::trace(&mut report, &curve, &q, true),
        Command::Igusa { curve } => commands::igusa(&mut report, &curve),
        Command::Split { order, q } => commands::split(&mut report, &order, &q),
        Command::Eliminate { family, packets, q, refined, skip_ramified, skip } => commands::eliminate_cmd(
            &mut report,
            &EliminateArgs { family, packets, q, refined, skip_ramified, skip },
        ),
        Command::Sieve { case, constraints, out } => commands::sieve(&mut report, case, &constraints, out.as_deref()),
        Command::CheckCongruence { curve_e, curve_c, bound } => {
            commands::congruence(&mut report, &curve_e, &curve_c, bound)
        }
        Command::CheckInvariants => {
            checks::invariants(&fx, &mut report);
            Ok(())
        }
        Command::FullReport => {
            checks::full(&fx, &mut report, cli.seed);
            Ok(())
        }
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.failed() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
