use bpq_core::fibonacci::FibProfile;
use bpq_core::invariants::check_all_invariants;
use bpq_core::modular::{is_prime, twin_primes_upto, PrimeModulus};
use bpq_core::quaternion::{qp_sequence, qp_symbolic_terms, qr_sequence, qr_symbolic_terms};
use bpq_core::sequences::{terms_integer, terms_mod, terms_symbolic, SeqKind, SeqParams};
use bpq_core::verifier::{applicable_cases, verify_case, TheoremCase};
use num_bigint::BigInt;

use crate::args::{Cli, Command, FibArgs, Format, KindArg, ScanArgs, SeqArgs, VerifyArgs};
use crate::report::{
    render_csv, render_table, to_json, FibRecord, FibReport, RunConfig, SeqReport, TermRecord,
    VerdictRecord, VerdictReport, TOOL_VERSION, VERDICT_COLUMNS,
};
use crate::CliError;

pub const MAX_SYMBOLIC_TERMS: usize = 400;
pub const MAX_TERMS: usize = 1_000_000;
pub const MAX_SCAN_MULTIPLIER: u64 = 64;

/// Rendered output and the process exit status it calls for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            exit_code: 0,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Seq(args) => cmd_seq(args, cli.format),
        Command::Fib(args) => cmd_fib(args, cli.format),
        Command::Verify(args) => cmd_verify(args, cli.format),
        Command::Scan(args) => cmd_scan(args, cli.format),
    }
}

fn base_config(command: &str, format: Format) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        p: None,
        a: None,
        b: None,
        upto: None,
        kind: None,
        symbolic: false,
        quaternion: false,
        case: None,
        scan_multiplier: None,
        format: format.name().to_string(),
    }
}

fn prime_modulus(p: u64) -> Result<PrimeModulus, CliError> {
    if !is_prime(p) {
        return Err(CliError::NotPrime(p));
    }
    PrimeModulus::new(p).map_err(|e| CliError::InvalidParams(e.to_string()))
}

fn require_twin_prime(p: u64) -> Result<(), CliError> {
    if p >= 5 && is_prime(p) && is_prime(p - 2) {
        Ok(())
    } else {
        Err(CliError::NotTwinPrime(p))
    }
}

fn check_multiplier(m: u64) -> Result<(), CliError> {
    if (2..=MAX_SCAN_MULTIPLIER).contains(&m) {
        Ok(())
    } else {
        Err(CliError::InvalidParams(format!(
            "--scan-multiplier must be between 2 and {MAX_SCAN_MULTIPLIER}, got {m}"
        )))
    }
}

enum SeqMode {
    Symbolic,
    Integer(i64, i64),
    Modular(SeqParams),
}

fn seq_mode(args: &SeqArgs) -> Result<SeqMode, CliError> {
    if args.symbolic {
        if args.upto > MAX_SYMBOLIC_TERMS {
            return Err(CliError::InvalidParams(format!(
                "--symbolic prints at most {MAX_SYMBOLIC_TERMS} terms"
            )));
        }
        return Ok(SeqMode::Symbolic);
    }
    if args.upto > MAX_TERMS {
        return Err(CliError::InvalidParams(format!(
            "--upto is limited to {MAX_TERMS}"
        )));
    }
    match (args.p, args.a, args.b) {
        (Some(p), a, b) => {
            let pm = prime_modulus(p)?;
            let a = a.unwrap_or(p as i64 - 2);
            let b = b.unwrap_or(p as i64);
            Ok(SeqMode::Modular(SeqParams::modular(a, b, pm)))
        }
        (None, Some(a), Some(b)) => {
            if args.upto > MAX_SYMBOLIC_TERMS {
                return Err(CliError::InvalidParams(format!(
                    "exact integer terms are limited to {MAX_SYMBOLIC_TERMS}; pass --p to reduce"
                )));
            }
            Ok(SeqMode::Integer(a, b))
        }
        _ => Err(CliError::InvalidParams(
            "seq needs --symbolic, --p, or both --a and --b".to_string(),
        )),
    }
}

/// Column strings for one sequence family under `mode`.
fn seq_column(
    mode: &SeqMode,
    kind: SeqKind,
    quaternion: bool,
    count: usize,
) -> Result<Vec<String>, CliError> {
    let strings = match (mode, quaternion) {
        (SeqMode::Symbolic, false) => terms_symbolic(kind, count)
            .iter()
            .map(|t| t.to_string())
            .collect(),
        (SeqMode::Symbolic, true) => match kind {
            SeqKind::Padovan => qp_symbolic_terms(count)
                .iter()
                .map(|q| q.to_string())
                .collect(),
            SeqKind::Perrin => qr_symbolic_terms(count)
                .iter()
                .map(|q| q.to_string())
                .collect(),
        },
        (SeqMode::Integer(a, b), quaternion) => {
            let (a, b) = (BigInt::from(*a), BigInt::from(*b));
            let direct = terms_integer(kind, &a, &b, count + 3);
            if !quaternion {
                direct.iter().take(count).map(|t| t.to_string()).collect()
            } else {
                let swapped = terms_integer(kind, &b, &a, count + 3);
                let pick = |m: usize| match kind {
                    SeqKind::Perrin if m % 2 == 1 => &swapped[m],
                    _ => &direct[m],
                };
                (0..count)
                    .map(|n| {
                        format!(
                            "{} + {}i + {}j + {}k",
                            pick(n),
                            pick(n + 1),
                            pick(n + 2),
                            pick(n + 3)
                        )
                    })
                    .collect()
            }
        }
        (SeqMode::Modular(params), false) => terms_mod(kind, params, count)?
            .iter()
            .map(|t| t.value().to_string())
            .collect(),
        (SeqMode::Modular(params), true) => {
            let seq = match kind {
                SeqKind::Padovan => qp_sequence(params, count),
                SeqKind::Perrin => qr_sequence(params, count),
            }
            .map_err(|e| CliError::InvalidParams(e.to_string()))?;
            seq.iter().map(|q| q.to_string()).collect()
        }
    };
    Ok(strings)
}

pub fn cmd_seq(args: &SeqArgs, format: Format) -> Result<Outcome, CliError> {
    let mode = seq_mode(args)?;
    let kinds: Vec<SeqKind> = match args.kind {
        Some(KindArg::Padovan) => vec![SeqKind::Padovan],
        Some(KindArg::Perrin) => vec![SeqKind::Perrin],
        None => vec![SeqKind::Padovan, SeqKind::Perrin],
    };
    let mut columns = Vec::new();
    for &kind in &kinds {
        columns.push((kind, seq_column(&mode, kind, args.quaternion, args.upto)?));
    }

    let header_for = |kind: SeqKind| match (kind, args.quaternion) {
        (SeqKind::Padovan, false) => "P_n",
        (SeqKind::Perrin, false) => "R_n",
        (SeqKind::Padovan, true) => "QP_n",
        (SeqKind::Perrin, true) => "QR_n",
    };
    let mut config = base_config("seq", format);
    config.upto = Some(args.upto as u64);
    config.kind = args.kind.map(|k| match k {
        KindArg::Padovan => "padovan".to_string(),
        KindArg::Perrin => "perrin".to_string(),
    });
    config.symbolic = args.symbolic;
    config.quaternion = args.quaternion;
    if let SeqMode::Modular(params) = &mode {
        config.p = params.modulus().map(|p| p.get());
        config.a = Some(params.a());
        config.b = Some(params.b());
    }
    if let SeqMode::Integer(a, b) = mode {
        config.a = Some(a);
        config.b = Some(b);
    }

    let output = match format {
        Format::Json => {
            let terms = (0..args.upto)
                .map(|n| {
                    let get = |kind| {
                        columns
                            .iter()
                            .find(|(k, _)| *k == kind)
                            .map(|(_, c)| c[n].clone())
                    };
                    TermRecord {
                        n: n as u64,
                        padovan: get(SeqKind::Padovan),
                        perrin: get(SeqKind::Perrin),
                    }
                })
                .collect();
            to_json(&SeqReport {
                tool_version: TOOL_VERSION.to_string(),
                config,
                terms,
            })
        }
        Format::Table | Format::Csv => {
            let mut headers = vec!["n"];
            headers.extend(kinds.iter().map(|&k| header_for(k)));
            let rows: Vec<Vec<String>> = (0..args.upto)
                .map(|n| {
                    let mut row = vec![n.to_string()];
                    row.extend(columns.iter().map(|(_, c)| c[n].clone()));
                    row
                })
                .collect();
            if format == Format::Csv {
                render_csv(&headers, &rows)
            } else {
                render_table(&headers, &rows)
            }
        }
    };
    Ok(Outcome::ok(output))
}

pub fn cmd_fib(args: &FibArgs, format: Format) -> Result<Outcome, CliError> {
    let pm = prime_modulus(args.p)?;
    let profile = FibProfile::new(pm);
    let relation = profile
        .relation()
        .map(|r| r.describe().to_string())
        .unwrap_or_else(|| "none of the expected relations".to_string());
    let record = FibRecord {
        p: args.p,
        entry_point: profile.entry_point,
        pisano_period: profile.pisano_period,
        relation,
    };
    let mut config = base_config("fib", format);
    config.p = Some(args.p);
    let output = match format {
        Format::Json => to_json(&FibReport {
            tool_version: TOOL_VERSION.to_string(),
            config,
            profile: record,
        }),
        Format::Table => format!(
            "p        {}\nz(p)     {}\npi(p)    {}\nrelation {}\n",
            record.p, record.entry_point, record.pisano_period, record.relation
        ),
        Format::Csv => render_csv(
            &["p", "entry_point", "pisano_period", "relation"],
            &[vec![
                record.p.to_string(),
                record.entry_point.to_string(),
                record.pisano_period.to_string(),
                record.relation,
            ]],
        ),
    };
    Ok(Outcome::ok(output))
}

fn theorem_records(
    p: u64,
    cases: &[bpq_core::verifier::CaseId],
    multiplier: u64,
) -> Result<Vec<VerdictRecord>, CliError> {
    cases
        .iter()
        .map(|&id| {
            let case = TheoremCase::new(id, p)?;
            Ok(VerdictRecord::from_theorem(&verify_case(
                &case, multiplier,
            )?))
        })
        .collect()
}

fn render_verdicts(report: &VerdictReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Table | Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .verdicts
                .iter()
                .map(|v| v.csv_fields().to_vec())
                .collect();
            if format == Format::Csv {
                render_csv(&VERDICT_COLUMNS, &rows)
            } else {
                render_table(&VERDICT_COLUMNS, &rows)
            }
        }
    }
}

fn verdict_outcome(report: VerdictReport, format: Format) -> Outcome {
    Outcome {
        output: render_verdicts(&report, format),
        exit_code: if report.any_fails() { 2 } else { 0 },
    }
}

pub fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<Outcome, CliError> {
    require_twin_prime(args.p)?;
    check_multiplier(args.scan_multiplier)?;
    let cases = match args.case {
        Some(c) => vec![c],
        None => applicable_cases(args.p),
    };
    let verdicts = theorem_records(args.p, &cases, args.scan_multiplier)?;
    let mut config = base_config("verify", format);
    config.p = Some(args.p);
    config.case = args.case.map(|c| c.as_str().to_string());
    config.scan_multiplier = Some(args.scan_multiplier);
    let report = VerdictReport {
        tool_version: TOOL_VERSION.to_string(),
        config,
        verdicts,
    };
    Ok(verdict_outcome(report, format))
}

/// Theorem rows then invariant rows for one twin prime.
pub fn scan_prime(p: u64, multiplier: u64) -> Result<Vec<VerdictRecord>, CliError> {
    let mut rows = theorem_records(p, &applicable_cases(p), multiplier)?;
    let profile = FibProfile::new(prime_modulus(p)?);
    for v in check_all_invariants(p, multiplier)? {
        rows.push(VerdictRecord::from_invariant(
            &v,
            profile.entry_point,
            profile.pisano_period,
        ));
    }
    Ok(rows)
}

pub fn cmd_scan(args: &ScanArgs, format: Format) -> Result<Outcome, CliError> {
    check_multiplier(args.scan_multiplier)?;
    let mut verdicts = Vec::new();
    for (_, p) in twin_primes_upto(args.upto) {
        verdicts.extend(scan_prime(p, args.scan_multiplier)?);
    }
    let mut config = base_config("scan", format);
    config.upto = Some(args.upto);
    config.scan_multiplier = Some(args.scan_multiplier);
    let report = VerdictReport {
        tool_version: TOOL_VERSION.to_string(),
        config,
        verdicts,
    };
    Ok(verdict_outcome(report, format))
}
