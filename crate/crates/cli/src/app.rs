//! Argument parsing and subcommand dispatch for the `partitions` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use partitions_core::discover::{discover_durfee, discover_pmn, discover_ps, FormulaKind, FormulaRecord, Strategy};
use partitions_core::floor_form::to_floor_form;
use partitions_core::hrr::{hrr_partial_sum, Rademacher};
use partitions_core::oracles::{durfee_histogram, euler_partition_series, DEFAULT_ENUMERATION_BOUND};
use partitions_core::series::count_series;
use partitions_core::store::{eval_from_db, parse_big_n, FormulaDatabase};
use partitions_core::BigInt;
use serde_json::json;

use crate::build::build_incremental;
use crate::dbfile::{load_database, save_database};
use crate::error::CliError;
use crate::json::{floor_form_json, RecordJson};

/// Environment variable naming the default database file.
pub const DB_ENV: &str = "PARTITIONS_DB";

#[derive(Parser, Debug)]
#[command(name = "partitions", version, about = "Proven quasi-polynomial formulae for restricted partition counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Fit {
    #[value(name = "per_component")]
    PerComponent,
    #[value(name = "global_fit")]
    GlobalFit,
}

impl From<Fit> for Strategy {
    fn from(f: Fit) -> Self {
        match f {
            Fit::PerComponent => Strategy::PerComponent,
            Fit::GlobalFit => Strategy::GlobalFit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Pmn,
    Durfee,
}

impl From<Kind> for FormulaKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Pmn => FormulaKind::Pmn,
            Kind::Durfee => FormulaKind::Durfee,
        }
    }
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct Discovery {
    #[arg(long, value_enum, default_value = "per_component")]
    strategy: Fit,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Formula for partitions of n into at most m parts
    Pmn {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[command(flatten)]
        opts: Discovery,
    },
    /// Formula for partitions of n with parts from a multiset, e.g. --parts 1,2,2,5
    Ps {
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
        parts: Vec<u64>,
        #[command(flatten)]
        opts: Discovery,
    },
    /// Formula for partitions of n whose Durfee square has side k
    Durfee {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[command(flatten)]
        opts: Discovery,
    },
    /// Formula for at most m parts written with floor functions
    Andrews {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a stored formula at n (decimal or 10^K)
    Eval {
        #[arg(long, env = DB_ENV)]
        db: PathBuf,
        #[arg(long, value_enum, default_value = "pmn")]
        kind: Kind,
        /// Parameter for pmn
        #[arg(long, conflicts_with = "k")]
        m: Option<u64>,
        /// Parameter for durfee
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        n: String,
        /// Print only the number of decimal digits of the value
        #[arg(long)]
        digits_only: bool,
    },
    /// p(n) by the pentagonal number recurrence
    Pn {
        #[arg(long)]
        n: u64,
    },
    /// p(0), ..., p(n), one per line
    Pnseq {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: Output,
    },
    /// p(n) from the Rademacher series, certified; or a raw partial sum with --terms
    Hrr {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Sum only this many terms and print the real value
        #[arg(long, requires = "digits")]
        terms: Option<u64>,
        /// Working precision in decimal digits for --terms
        #[arg(long, requires = "terms")]
        digits: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Formula database management
    Db {
        #[command(subcommand)]
        action: DbCommand,
    },
    /// Check formulae against independent counts; exits 2 on any mismatch
    Verify {
        /// Check stored formulae instead of discovering them afresh
        #[arg(long, env = DB_ENV)]
        db: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "pmn")]
        kind: Kind,
        /// Largest parameter to check
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        /// Check n = 0..=n-max
        #[arg(long, default_value_t = 200)]
        n_max: u64,
    },
}

#[derive(Subcommand, Debug)]
enum DbCommand {
    /// Discover and store parameters 1..=max, keeping existing records
    Build {
        #[arg(long, env = DB_ENV)]
        db: PathBuf,
        #[arg(long, value_enum, default_value = "pmn")]
        kind: Kind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        /// Worker threads for discovery
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
    },
    /// Summarize a database file
    Info {
        #[arg(long, env = DB_ENV)]
        db: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Usage(format!("cannot write output: {e}"))
}

fn emit_record(rec: &FormulaRecord, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Text => write!(out, "{}", rec.formula.render()).map_err(io),
        Format::Json => {
            let text = serde_json::to_string_pretty(&RecordJson::from_record(rec)).expect("records serialize");
            writeln!(out, "{text}").map_err(io)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Pmn { m, opts } => emit_record(&discover_pmn(m, opts.strategy.into())?, opts.out.format, out),
        Command::Ps { parts, opts } => emit_record(&discover_ps(&parts, opts.strategy.into())?, opts.out.format, out),
        Command::Durfee { k, opts } => {
            emit_record(&discover_durfee(k, opts.strategy.into())?, opts.out.format, out)
        }
        Command::Andrews { m, out: o } => {
            let fe = to_floor_form(&discover_pmn(m, Strategy::PerComponent)?.formula)?;
            match o.format {
                Format::Text => write!(out, "{}", fe.render()).map_err(io),
                Format::Json => {
                    let v = json!({ "m": m, "terms": floor_form_json(&fe) });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializes")).map_err(io)
                }
            }
        }
        Command::Eval { db, kind, m, k, n, digits_only } => {
            let parameter = match (kind, m, k) {
                (Kind::Pmn, Some(m), None) => m,
                (Kind::Durfee, None, Some(k)) => k,
                (Kind::Pmn, _, _) => return Err(CliError::Usage("eval --kind pmn needs --m".into())),
                (Kind::Durfee, _, _) => return Err(CliError::Usage("eval --kind durfee needs --k".into())),
            };
            let n = parse_big_n(&n)?;
            let db = load_database(&db)?;
            let value = eval_from_db(&db, kind.into(), parameter, &n)?;
            if digits_only {
                writeln!(out, "{}", value.magnitude().to_string().len()).map_err(io)
            } else {
                writeln!(out, "{value}").map_err(io)
            }
        }
        Command::Pn { n } => {
            let table = euler_partition_series(n as usize);
            writeln!(out, "{}", table.values()[n as usize]).map_err(io)
        }
        Command::Pnseq { n, out: o } => {
            let table = euler_partition_series(n as usize);
            match o.format {
                Format::Text => {
                    for v in table.values() {
                        writeln!(out, "{v}").map_err(io)?;
                    }
                    Ok(())
                }
                Format::Json => {
                    let v: Vec<String> = table.values().iter().map(BigInt::to_string).collect();
                    writeln!(out, "{}", serde_json::to_string(&v).expect("serializes")).map_err(io)
                }
            }
        }
        Command::Hrr { n, terms, digits, out: o } => hrr(n, terms.zip(digits), o.format, out),
        Command::Db { action } => db_command(action, out),
        Command::Verify { db, kind, max, n_max } => verify(db.as_deref(), kind.into(), max, n_max, out),
    }
}

fn hrr(n: u64, partial: Option<(u64, u32)>, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some((terms, digits)) = partial {
        let x = hrr_partial_sum(n, terms, digits)?;
        let places = digits.min(40);
        return match format {
            Format::Text => writeln!(out, "{}", x.to_decimal(places)).map_err(io),
            Format::Json => {
                let v = json!({ "n": n, "terms": terms, "digits": digits, "value": x.to_decimal(places) });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializes")).map_err(io)
            }
        };
    }
    let c = Rademacher::default().certified(n)?;
    match format {
        Format::Text => writeln!(out, "{}", c.value).map_err(io),
        Format::Json => {
            let v = json!({
                "n": n,
                "value": c.value.to_string(),
                "terms": c.terms,
                "digits": c.digits,
                "attempts": c.attempts,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializes")).map_err(io)
        }
    }
}

fn load_or_new(path: &Path) -> Result<FormulaDatabase, CliError> {
    if path.exists() {
        Ok(load_database(path)?)
    } else {
        Ok(FormulaDatabase::new())
    }
}

/// `1-4,7` style summary of a sorted list.
fn ranges(values: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i;
        while j + 1 < values.len() && values[j + 1] == values[j] + 1 {
            j += 1;
        }
        parts.push(if i == j { values[i].to_string() } else { format!("{}-{}", values[i], values[j]) });
        i = j + 1;
    }
    parts.join(",")
}

fn db_command(action: DbCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match action {
        DbCommand::Build { db: path, kind, max, jobs } => {
            let mut db = load_or_new(&path)?;
            let kind: FormulaKind = kind.into();
            let added = build_incremental(&mut db, kind, max, jobs as usize, |db, _| {
                save_database(db, &path).map_err(CliError::from)
            })?;
            if added == 0 && !path.exists() {
                save_database(&db, &path)?;
            }
            writeln!(out, "{} {} record(s) added; {} stored: {}", added, kind.name(), db.parameters(kind).len(), ranges(&db.parameters(kind)))
                .map_err(io)
        }
        DbCommand::Info { db: path, out: o } => {
            let db = load_database(&path)?;
            let kinds = [FormulaKind::Pmn, FormulaKind::Durfee];
            let ps = db.records().iter().filter(|r| r.kind == FormulaKind::PS).count();
            match o.format {
                Format::Text => {
                    writeln!(out, "version {}", db.version).map_err(io)?;
                    writeln!(out, "records {}", db.len()).map_err(io)?;
                    for k in kinds {
                        let params = db.parameters(k);
                        if !params.is_empty() {
                            writeln!(out, "{} {}", k.name(), ranges(&params)).map_err(io)?;
                        }
                    }
                    if ps > 0 {
                        writeln!(out, "pS {ps}").map_err(io)?;
                    }
                    Ok(())
                }
                Format::Json => {
                    let v = json!({
                        "version": db.version,
                        "records": db.len(),
                        "pmn": db.parameters(FormulaKind::Pmn),
                        "durfee": db.parameters(FormulaKind::Durfee),
                        "pS": ps,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializes")).map_err(io)
                }
            }
        }
    }
}

fn verify(db: Option<&Path>, kind: FormulaKind, max: u64, n_max: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let db = db.map(load_database).transpose()?;
    let mut failures = Vec::new();
    for p in 1..=max {
        let rec = match &db {
            Some(db) => db.get(kind, p).cloned().ok_or_else(|| {
                CliError::Usage(format!("database has no {} record for parameter {p}", kind.name()))
            })?,
            None => match kind {
                FormulaKind::Durfee => discover_durfee(p, Strategy::PerComponent)?,
                _ => discover_pmn(p, Strategy::PerComponent)?,
            },
        };
        let expected = oracle_values(kind, p, n_max)?;
        let compiled = rec.formula.compile();
        let mismatch = expected.iter().enumerate().find_map(|(n, want)| match compiled.eval(&BigInt::from(n)) {
            Ok(got) if &got == want => None,
            Ok(got) => Some(format!("n = {n}: formula {got}, oracle {want}")),
            Err(e) => Some(format!("n = {n}: {e}")),
        });
        match mismatch {
            None => writeln!(out, "{} {} ok for n = 0..={n_max}", kind.name(), rec.label()).map_err(io)?,
            Some(m) => {
                writeln!(out, "{} {} MISMATCH at {m}", kind.name(), rec.label()).map_err(io)?;
                failures.push(rec.label());
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("{} {}", kind.name(), failures.join(", "))))
    }
}

/// Counts from the coin-change table; Durfee counts for small `n` come from
/// brute-force enumeration instead.
fn oracle_values(kind: FormulaKind, p: u64, n_max: u64) -> Result<Vec<BigInt>, CliError> {
    match kind {
        FormulaKind::Durfee => {
            let shift = (p * p) as usize;
            let parts: Vec<u64> = (1..=p).flat_map(|i| [i, i]).collect();
            let series = count_series(&parts, (n_max as usize).saturating_sub(shift));
            let mut values = Vec::with_capacity(n_max as usize + 1);
            for n in 0..=n_max {
                let v = if n <= 40.min(DEFAULT_ENUMERATION_BOUND) {
                    BigInt::from(durfee_histogram(n, DEFAULT_ENUMERATION_BOUND)?.get(p as usize).copied().unwrap_or(0))
                } else if (n as usize) < shift {
                    BigInt::from(0)
                } else {
                    series[n as usize - shift].clone()
                };
                values.push(v);
            }
            Ok(values)
        }
        _ => {
            let parts: Vec<u64> = (1..=p).collect();
            Ok(count_series(&parts, n_max as usize))
        }
    }
}
