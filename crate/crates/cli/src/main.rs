//! `shefferzeta`: sequences, number tables and identity verification.
//!
//! Exit codes: 0 everything passed, 1 a verification failed, 2 bad usage.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use shefferzeta::bernoulli_euler::{number_table, table_agrees, NumberKind};
use shefferzeta::identities::{self, Context};
use shefferzeta::quadrature::{self, Params, Precision};
use shefferzeta::sheffer::{gen, Sequence, SequenceRoute};
use shefferzeta::Error;

use output::{Format, Sink};

#[derive(Parser, Debug)]
#[command(name = "shefferzeta", version, about = "Sheffer sequences, Bernoulli/Euler numbers and zeta identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Pretty)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate p_n or q_n.
    Gen {
        #[arg(value_enum)]
        seq: Seq,
        n: usize,
        /// Construction route (default: diff_recurrence for p, derivative_sum for q).
        #[arg(long)]
        route: Option<String>,
        /// Build by every route and report whether they agree.
        #[arg(long, conflicts_with = "route")]
        all_routes: bool,
    },
    /// Tabulate Bernoulli numbers, Euler numbers or ζ(2n)/π^{2n} up to an index.
    Numbers {
        #[arg(value_enum)]
        kind: Kind,
        n_max: usize,
        #[arg(long)]
        variant: Option<String>,
        /// Recompute every row by all variants and flag disagreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run the exact and/or numeric identity checks.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// Comma-separated check ids (default: all in scope).
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Working precision in decimal digits.
        #[arg(long, default_value_t = quadrature::DEFAULT_DIGITS)]
        prec: u32,
        /// Relative tolerance; overrides each numeric check's default.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Seq {
    P,
    Q,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Bernoulli,
    Euler,
    ZetaEvenRatio,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    Exact,
    Numeric,
    All,
}

enum Failure {
    Usage(String),
    Verification,
    Io(io::Error),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::UnknownCheck(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut sink = Sink::new(out, cli.format);
    let result = match cli.command {
        Command::Gen { seq, n, route, all_routes } => cmd_gen(&mut sink, seq, n, route.as_deref(), all_routes),
        Command::Numbers { kind, n_max, variant, cross_check } => {
            cmd_numbers(&mut sink, kind, n_max, variant.as_deref(), cross_check)
        }
        Command::Verify { scope, ids, n_max, prec, tol } => cmd_verify(&mut sink, scope, &ids, n_max, prec, tol),
    };
    sink.finish()?;
    result
}

fn cmd_gen(sink: &mut Sink, seq: Seq, n: usize, route: Option<&str>, all_routes: bool) -> CliResult {
    let seq = match seq {
        Seq::P => Sequence::P,
        Seq::Q => Sequence::Q,
    };
    let routes: Vec<SequenceRoute> = if all_routes {
        SequenceRoute::routes_for(seq).to_vec()
    } else {
        vec![route.map(str::parse).transpose()?.unwrap_or(SequenceRoute::default_for(seq))]
    };
    let polys = routes.iter().map(|&r| Ok((r, gen(seq, n, r)?))).collect::<Result<Vec<_>, Error>>()?;
    let agree = polys.windows(2).all(|w| w[0].1 == w[1].1);
    sink.polys(seq, n, &polys, all_routes.then_some(agree))?;
    if agree {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_numbers(sink: &mut Sink, kind: Kind, n_max: usize, variant: Option<&str>, cross_check: bool) -> CliResult {
    if n_max < 1 {
        return Err(Failure::Usage("n_max must be at least 1".into()));
    }
    let kind = match kind {
        Kind::Bernoulli => NumberKind::Bernoulli,
        Kind::Euler => NumberKind::Euler,
        Kind::ZetaEvenRatio => NumberKind::ZetaEvenRatio,
    };
    let rows = number_table(kind, n_max, variant, cross_check)?;
    sink.numbers(kind, variant, &rows)?;
    if table_agrees(&rows) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_verify(sink: &mut Sink, scope: Scope, ids: &[String], n_max: usize, prec: u32, tol: Option<f64>) -> CliResult {
    if n_max < 1 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let prec = Precision::new(prec)?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    // Split requested ids between the two registries before running anything,
    // so a typo is reported without waiting for a long sweep.
    let exact_known: Vec<&str> = identities::check_ids().collect();
    let numeric_known = quadrature::numeric_check_ids();
    let mut exact_ids: Vec<&str> = Vec::new();
    let mut numeric_ids: Vec<&str> = Vec::new();
    for id in ids {
        let id = id.as_str();
        let in_exact = scope != Scope::Numeric && exact_known.contains(&id);
        let in_numeric = scope != Scope::Exact && numeric_known.contains(&id);
        if !in_exact && !in_numeric {
            return Err(Error::UnknownCheck(id.to_string()).into());
        }
        if in_exact {
            exact_ids.push(id);
        }
        if in_numeric {
            numeric_ids.push(id);
        }
    }
    let selective = !ids.is_empty();
    let mut all_ok = true;
    sink.begin_verify()?;
    if scope != Scope::Numeric && !(selective && exact_ids.is_empty()) {
        let ctx = Context::new(n_max)?;
        for report in identities::run_with(&ctx, &exact_ids)? {
            all_ok &= report.passed();
            sink.identity(&report)?;
        }
    }
    if scope != Scope::Exact && !(selective && numeric_ids.is_empty()) {
        let list = if selective { numeric_ids } else { numeric_known };
        for id in list {
            for r in quadrature::verify_numeric(id, &Params::default(), prec, tol)? {
                all_ok &= r.ok();
                sink.quad(&r)?;
            }
        }
    }
    sink.end_verify()?;
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
