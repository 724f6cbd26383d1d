//! Command-line surface: τ values and tables, verification sweeps, local
//! solubility certificates, and curve reduction records.
//!
//! Reports go to standard output as JSON lines, diagnostics to standard
//! error.  Exit codes: 0 success, 1 verification failure, 2 configuration
//! or precondition error, 3 inconclusive local certificate.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use taukit::congruence::{verify_congruence, CongruenceLaw};
use taukit::elliptic::{ap_sweep, CurveSpec};
use taukit::padic::{has_root_in_zp, hensel_lift, is_square_in_qp, IntPolynomial, RootVerdict};
use taukit::report::write_jsonl;
use taukit::tau::{
    compute_tau_table, tau_extended, verify_conjecture_one, verify_deligne_bound,
    verify_eigenform, TauTable,
};

const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "taukit",
    version,
    about = "Ramanujan tau tables, verification sweeps, and a p-adic local toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print τ(n), or write a full table with --table/--out.
    Tau(TauArgs),
    /// Run a verification sweep; exit 0 only if every record passes.
    Verify(VerifyArgs),
    /// Local solubility toolkit over Q_p.
    Local(LocalArgs),
    /// Reduce y² = x³ + ax + b at every prime p <= pmax.
    Curve(CurveArgs),
}

#[derive(Args)]
struct TauArgs {
    /// Index n.
    #[arg(value_name = "N", required_unless_present = "table", conflicts_with = "table")]
    n: Option<u64>,
    /// Compute the whole table τ(1..=N) instead.
    #[arg(long, value_name = "N")]
    table: Option<usize>,
    /// Output path for the table (defaults to standard output).
    #[arg(long, requires = "table")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Law to sweep.
    #[arg(value_parser = [
        "conjecture-one", "deligne", "eigenform",
        "congruence-691", "congruence-32", "congruence-3",
    ])]
    law: String,
    /// Sweep bound: table size and largest prime considered.
    #[arg(long, value_name = "P")]
    pmax: usize,
}

#[derive(Args)]
struct LocalArgs {
    #[command(subcommand)]
    op: LocalOp,
}

#[derive(Subcommand)]
enum LocalOp {
    /// Search for roots of a polynomial in Z_p, escalating precision.
    Roots {
        #[arg(long)]
        p: u64,
        /// Comma-separated integer coefficients, constant term first
        /// ("-2,0,1" is x^2 - 2).
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Effort bound: precisions 1..=k are enumerated.
        #[arg(long, value_name = "K", default_value_t = 8)]
        precision: u32,
    },
    /// Decide whether a nonzero rational is a square in Q_p.
    Square {
        #[arg(long)]
        p: u64,
        /// The value, as an integer or numer/denom fraction.
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        /// Witness precision for the square root of the unit part.
        #[arg(long, value_name = "K", default_value_t = 8)]
        precision: u32,
    },
    /// Lift a simple root of f mod p to a root mod p^k.
    Hensel {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Starting residue mod p.
        #[arg(long)]
        start: u64,
        #[arg(long, value_name = "K")]
        precision: u32,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// Coefficient a of y² = x³ + ax + b.
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    /// Coefficient b of y² = x³ + ax + b.
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    /// Largest prime to reduce at.
    #[arg(long, value_name = "P")]
    pmax: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn run(cli: Cli) -> taukit::Result<ExitCode> {
    match cli.command {
        Command::Tau(args) => cmd_tau(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Local(args) => cmd_local(args.op),
        Command::Curve(args) => cmd_curve(args),
    }
}

/// Obtain a τ table of the requested size, consulting the directory named
/// by TAU_TABLE_CACHE when it is set.
fn obtain_table(max_n: usize) -> taukit::Result<TauTable> {
    let Some(dir) = std::env::var_os("TAU_TABLE_CACHE") else {
        return compute_tau_table(max_n);
    };
    let path = PathBuf::from(dir).join(format!("tau-table-{max_n}.txt"));
    if path.is_file() {
        let table = TauTable::load(&path)?;
        if table.max_n() == max_n {
            return Ok(table);
        }
        eprintln!("warning: ignoring cached table {path:?} of wrong size");
    }
    let table = compute_tau_table(max_n)?;
    if let Err(err) = table.save(&path) {
        eprintln!("warning: could not cache table at {path:?}: {err}");
    }
    Ok(table)
}

fn cmd_tau(args: TauArgs) -> taukit::Result<ExitCode> {
    if let Some(max_n) = args.table {
        let table = obtain_table(max_n)?;
        match args.out {
            Some(path) => table.save(&path)?,
            None => {
                let stdout = std::io::stdout();
                table.write_to(&mut stdout.lock())?;
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let n = args.n.expect("clap enforces n xor --table");
    if n == 0 {
        return Err(taukit::Error::NotPositive);
    }
    // the table only needs to cover the largest prime factor of n
    let needed = taukit::primes::factorize(n)
        .last()
        .map_or(1, |&(p, _)| p as usize);
    let table = obtain_table(needed)?;
    println!("{}", tau_extended(n, &table)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> taukit::Result<ExitCode> {
    let table = obtain_table(args.pmax)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let (checked, failures) = match args.law.as_str() {
        "conjecture-one" => {
            let records = verify_conjecture_one(&table)?;
            write_jsonl(&records, &mut out)?;
            (records.len(), records.iter().filter(|r| !r.pass()).count())
        }
        "deligne" => {
            let records = verify_deligne_bound(&table)?;
            write_jsonl(&records, &mut out)?;
            (records.len(), records.iter().filter(|r| !r.pass).count())
        }
        "eigenform" => {
            let records = verify_eigenform(&table, args.pmax as u64)?;
            write_jsonl(&records, &mut out)?;
            (records.len(), records.iter().filter(|r| !r.pass).count())
        }
        law => {
            let law = match law {
                "congruence-691" => CongruenceLaw::mod_691(),
                "congruence-32" => CongruenceLaw::mod_32(),
                "congruence-3" => CongruenceLaw::mod_3(),
                other => unreachable!("clap restricts the law set, got {other}"),
            };
            let records = verify_congruence(&law, &table)?;
            write_jsonl(&records, &mut out)?;
            (records.len(), records.iter().filter(|r| !r.pass).count())
        }
    };
    out.flush()?;
    eprintln!("{}: {checked} records, {failures} failures", args.law);
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION_FAILED)
    })
}

fn cmd_local(op: LocalOp) -> taukit::Result<ExitCode> {
    match op {
        LocalOp::Roots { p, poly, precision } => {
            let f = IntPolynomial::parse(&poly)?;
            let cert = has_root_in_zp(&f, p, precision)?;
            println!("{}", serde_json::to_string(&cert).expect("certificates serialize"));
            Ok(match cert.verdict {
                RootVerdict::Inconclusive => ExitCode::from(EXIT_INCONCLUSIVE),
                _ => ExitCode::SUCCESS,
            })
        }
        LocalOp::Square { p, value, precision } => {
            let value: BigRational =
                value.parse().map_err(|_| taukit::Error::MalformedPolynomial {
                    reason: format!("cannot parse rational {value:?}"),
                })?;
            let cert = is_square_in_qp(&value, p, precision)?;
            println!("{}", serde_json::to_string(&cert).expect("certificates serialize"));
            Ok(ExitCode::SUCCESS)
        }
        LocalOp::Hensel { p, poly, start, precision } => {
            let f = IntPolynomial::parse(&poly)?;
            let witness = hensel_lift(&f, p, start, precision)?;
            println!(
                "{}",
                serde_json::json!({
                    "p": p.to_string(),
                    "poly": f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "start": start.to_string(),
                    "precision": precision,
                    "witness": witness.to_string(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_curve(args: CurveArgs) -> taukit::Result<ExitCode> {
    let curve = CurveSpec::from_i64(args.a, args.b)?;
    let records = ap_sweep(&curve, args.pmax)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    write_jsonl(&records, &mut out)?;
    out.flush()?;
    eprintln!(
        "curve a={} b={}: {} primes, discriminant {}",
        args.a,
        args.b,
        records.len(),
        curve.discriminant()
    );
    Ok(ExitCode::SUCCESS)
}
