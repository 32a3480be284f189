//! `supercong`: prime sweeps over the congruence registry, identity suites,
//! eta-coefficient tables and quadratic-form representations.

mod config;

use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use supercong::arith::represent;
use supercong::congruences::{run_suite, SuiteOptions};
use supercong::identities::run_identity_suite;
use supercong::qseries::{CoefficientKind, EtaCoefficients};
use supercong::report::{Format, Record, RecordWriter};

use config::{check_writable, CommonArgs, UsageError};

#[derive(Debug, Parser)]
#[command(
    name = "supercong",
    version,
    about = "Exact checks of binomial-sum supercongruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check registry congruences over a range of primes.
    Verify(CommonArgs),
    /// Run the exact polynomial and rational identity suites.
    Identities(CommonArgs),
    /// Write n, a(n), b(n), c(n) for n <= --order.
    Eta(CommonArgs),
    /// Write normalised representations p = x^2 + d y^2.
    Repr(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Identities(_) => "identities",
            Command::Eta(_) => "eta",
            Command::Repr(_) => "repr",
        }
    }
}

/// Output sink plus the optional append-only log.
struct Sinks {
    out: RecordWriter<Box<dyn Write>>,
    log: Option<BufWriter<File>>,
}

impl Sinks {
    fn open(args: &CommonArgs, command: &str) -> Result<Self> {
        let format = args.format()?;
        let out: Box<dyn Write> = match &args.out {
            Some(path) => {
                check_writable(path)?;
                Box::new(BufWriter::new(File::create(path).map_err(|e| {
                    UsageError(format!("cannot write {}: {e}", path.display()))
                })?))
            }
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        let log = match &args.log {
            None => None,
            Some(path) => {
                let file = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .map_err(|e| UsageError(format!("cannot open log {}: {e}", path.display())))?;
                let mut log = BufWriter::new(file);
                let started = SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                let header = serde_json::json!({
                    "header": true,
                    "command": command,
                    "started_unix": started,
                    "args": std::env::args().skip(1).collect::<Vec<_>>(),
                });
                writeln!(log, "{header}")?;
                Some(log)
            }
        };
        Ok(Self {
            out: RecordWriter::new(out, format),
            log,
        })
    }

    fn write(&mut self, r: &Record) -> Result<()> {
        self.out.write(r).context("writing output")?;
        if let Some(log) = &mut self.log {
            serde_json::to_writer(&mut *log, r)?;
            writeln!(log)?;
        }
        Ok(())
    }

    fn finish(self) -> Result<()> {
        self.out.finish().context("writing output")?;
        if let Some(mut log) = self.log {
            log.flush()?;
        }
        Ok(())
    }
}

fn cmd_verify(args: &CommonArgs) -> Result<u8> {
    let primes = args.primes(None)?;
    let ids = args.ids()?;
    let options = SuiteOptions {
        jobs: args.jobs()?,
        eta_order: args.order,
        exponents: args.exponents()?,
        shifts: args.shifts()?,
        no_timing: args.no_timing,
    };
    let mut sinks = Sinks::open(args, "verify")?;
    let reports = run_suite(&ids, &primes, &options)?;
    let mut failed = false;
    for r in &reports {
        failed |= r.status.is_failure();
        sinks.write(&Record::from(r))?;
    }
    sinks.finish()?;
    Ok(failed as u8)
}

fn cmd_identities(args: &CommonArgs) -> Result<u8> {
    let grid = args.grid()?;
    let jobs = args.jobs()?;
    let mut sinks = Sinks::open(args, "identities")?;
    let results = if jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()?
            .install(|| run_identity_suite(&grid))
    } else {
        run_identity_suite(&grid)
    };
    let mut failed = false;
    for (r, micros) in &results {
        failed |= !r.passed();
        let micros = if args.no_timing { 0 } else { *micros };
        sinks.write(&Record::from_identity(r, micros))?;
    }
    sinks.finish()?;
    Ok(failed as u8)
}

fn open_plain(args: &CommonArgs) -> Result<Box<dyn Write>> {
    Ok(match &args.out {
        Some(path) => {
            check_writable(path)?;
            Box::new(BufWriter::new(File::create(path).map_err(|e| {
                UsageError(format!("cannot write {}: {e}", path.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_eta(args: &CommonArgs) -> Result<u8> {
    let order = args.order.unwrap_or(100);
    if order == 0 {
        return Err(UsageError("--order must be positive".into()).into());
    }
    let format = args
        .format
        .as_deref()
        .map(str::parse)
        .transpose()?
        .unwrap_or(Format::Csv);
    let eta = EtaCoefficients::new(order)?;
    let mut out = open_plain(args)?;
    let coeff = |kind, n| eta.get(kind, n).cloned().unwrap_or_default();
    if format == Format::Csv {
        writeln!(out, "n,a,b,c")?;
    }
    for n in 1..=order {
        let (a, b, c) = (
            coeff(CoefficientKind::A, n),
            coeff(CoefficientKind::B, n),
            coeff(CoefficientKind::C, n),
        );
        match format {
            Format::Csv => writeln!(out, "{n},{a},{b},{c}")?,
            Format::Jsonl => writeln!(
                out,
                "{}",
                serde_json::json!({ "n": n, "a": a.to_string(), "b": b.to_string(), "c": c.to_string() })
            )?,
            Format::Human => writeln!(out, "{n:>6} {a:>12} {b:>12} {c:>12}")?,
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_repr(args: &CommonArgs) -> Result<u8> {
    let primes = args.primes(None)?;
    let forms = args.forms()?;
    let format = args
        .format
        .as_deref()
        .map(str::parse)
        .transpose()?
        .unwrap_or(Format::Csv);
    let mut out = open_plain(args)?;
    if format == Format::Csv {
        writeln!(out, "p,d,x,y")?;
    }
    for &d in &forms {
        for &p in &primes {
            let Some(r) = represent(p, d) else { continue };
            match format {
                Format::Csv => writeln!(out, "{},{},{},{}", r.p, r.d, r.x, r.y)?,
                Format::Jsonl => writeln!(out, "{}", serde_json::to_string(&r)?)?,
                Format::Human => writeln!(out, "{} = ({})^2 + {}*({})^2", r.p, r.x, r.d, r.y)?,
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    let name = cli.command.name();
    let args = match &cli.command {
        Command::Verify(a) | Command::Identities(a) | Command::Eta(a) | Command::Repr(a) => {
            a.clone()
        }
    }
    .with_config_file()?;
    match name {
        "verify" => cmd_verify(&args),
        "identities" => cmd_identities(&args),
        "eta" => cmd_eta(&args),
        _ => cmd_repr(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<UsageError>().is_some()
                || matches!(
                    e.downcast_ref::<supercong::Error>(),
                    Some(
                        supercong::Error::InvalidArgument(_)
                            | supercong::Error::ExponentOutOfRange(_)
                    )
                );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
