use std::path::PathBuf;

use bpq_core::verifier::CaseId;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "bpq",
    version,
    about = "Bi-periodic Padovan and Perrin sequences, their quaternions mod p, and zero-divisor checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print sequence or quaternion terms.
    Seq(SeqArgs),
    /// Print the Fibonacci entry point and Pisano period of a prime.
    Fib(FibArgs),
    /// Check every claim that applies to one twin prime.
    Verify(VerifyArgs),
    /// Check every twin prime up to a bound.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Table => "table",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Padovan,
    Perrin,
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    /// Only this sequence (both when omitted).
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,

    /// Print polynomials in a and b.
    #[arg(long, conflicts_with_all = ["p", "a", "b"])]
    pub symbolic: bool,

    /// Print quaternions QP_n / QR_n instead of sequence terms.
    #[arg(long)]
    pub quaternion: bool,

    /// Reduce modulo this prime; a and b default to p - 2 and p.
    #[arg(long)]
    pub p: Option<u64>,

    /// Coefficient a; without --p the terms are exact integers
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,

    /// Coefficient b
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<i64>,

    /// Number of terms, starting at index 0.
    #[arg(long)]
    pub upto: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FibArgs {
    #[arg(long)]
    pub p: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Twin prime p (p - 2 also prime).
    #[arg(long)]
    pub p: u64,

    /// Only this claim.
    #[arg(long = "case", value_parser = parse_case)]
    pub case: Option<CaseId>,

    /// Number of full windows to scan.
    #[arg(long, default_value_t = 2)]
    pub scan_multiplier: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Largest p to include.
    #[arg(long)]
    pub upto: u64,

    /// Number of full windows to scan per prime.
    #[arg(long, default_value_t = 2)]
    pub scan_multiplier: u64,
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    s.parse::<CaseId>().map_err(|e| {
        let ids: Vec<&str> = CaseId::ALL.iter().map(|c| c.as_str()).collect();
        format!("{e}; expected one of {}", ids.join(", "))
    })
}
