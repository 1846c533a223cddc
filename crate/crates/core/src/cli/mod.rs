//! Command-line front end: `gen`, `check`, `verify`, `table`.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 usage or parse error,
//! 3 excluded configuration.

mod files;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::admissibility::{
    check_generic_configuration, default_neg_depth, default_truncation, eta_table_from_series,
    gamma_closed_form, generate_instance_with, verify_equivalence, Checker, EquivalenceConfig,
    RhoChoice,
};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::symfun::{mu_table, signed_coeffs};

pub use files::{FailureEntry, ParamsFile, PassFail, ReportFile, Verdicts};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXCLUDED: i32 = 3;

/// Largest rank accepted by `verify`.
pub const VERIFY_MAX_RANK: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "cbmw",
    version,
    about = "Exact admissibility checks for cyclotomic BMW parameters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a u-admissible parameter file.
    Gen {
        #[arg(long)]
        r: usize,
        /// Comma-separated rationals u1,...,ur.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        u: Vec<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        q: Rational,
        /// minus-a0 | plus-a0 (odd r), q-inv-a0 | minus-q-a0 (even r).
        #[arg(long)]
        rho_choice: Option<RhoChoice>,
        /// Truncation N (default 2r + 8).
        #[arg(long)]
        max_a: Option<usize>,
        /// Depth D of negative deltas (default min(r + 6, N)).
        #[arg(long)]
        neg_depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a parameter file against every admissibility condition.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_a: Option<usize>,
        #[arg(long)]
        neg_depth: Option<usize>,
        /// Write the JSON report here and print a summary instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the equivalence on random instances and the symbolic identities.
    Verify {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_a: Option<usize>,
        #[arg(long)]
        neg_depth: Option<usize>,
    },
    /// Print a table of canonical polynomials.
    Table {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        what: TableKind,
        /// Largest index for mu and xi (default 2r + 8).
        #[arg(long)]
        max: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Mu,
    Xi,
    Gamma,
    ACoeffs,
}

impl std::str::FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <TableKind as ValueEnum>::from_str(s, false)
            .map_err(|_| Error::Parse(format!("unknown table {s:?} (mu, xi, gamma, a-coeffs)")))
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ExcludedConfiguration(_) | Error::QMinusQInvVanishes => EXIT_EXCLUDED,
        Error::Parse(_) | Error::InvalidArgument(_) | Error::OutOfRange(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Runs the CLI on `args` (including the program name), writing to `out`
/// and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen {
            r,
            u,
            q,
            rho_choice,
            max_a,
            neg_depth,
            out: path,
        } => cmd_gen(r, &u, &q, rho_choice, max_a, neg_depth, path, out),
        Command::Check {
            input,
            max_a,
            neg_depth,
            out: path,
        } => cmd_check(&input, max_a, neg_depth, path, out),
        Command::Verify {
            r,
            samples,
            seed,
            max_a,
            neg_depth,
        } => cmd_verify(r, samples, seed, max_a, neg_depth, out),
        Command::Table { r, what, max } => cmd_table(r, what, max, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("{}: {e}", path.display()))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::Internal(format!("write failed: {e}")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    r: usize,
    u: &[Rational],
    q: &Rational,
    rho_choice: Option<RhoChoice>,
    max_a: Option<usize>,
    neg_depth: Option<usize>,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    if r == 0 {
        return Err(Error::InvalidArgument("--r must be at least 1".into()));
    }
    if u.len() != r {
        return Err(Error::InvalidArgument(format!(
            "--u has {} values, expected {r}",
            u.len()
        )));
    }
    if let Some(i) = u.iter().position(Rational::is_zero) {
        return Err(Error::InvalidArgument(format!(
            "u{} must be nonzero",
            i + 1
        )));
    }
    if q.is_zero() {
        return Err(Error::InvalidArgument("q must be nonzero".into()));
    }
    check_generic_configuration(u, q)?;
    let n = max_a.unwrap_or_else(|| default_truncation(r));
    let d = neg_depth.unwrap_or_else(|| default_neg_depth(r).min(n));
    let choice = rho_choice.unwrap_or_else(|| RhoChoice::normalized(r));
    let table = eta_table_from_series(r, n)?;
    let instance = generate_instance_with(&table, u, q, choice, n, d)?;
    let json = ParamsFile::from_instance(&instance).to_json();
    match path {
        Some(p) => fs::write(&p, json + "\n").map_err(|e| io_err(&p, e))?,
        None => write_out(out, &json)?,
    }
    Ok(EXIT_PASS)
}

fn cmd_check(
    input: &std::path::Path,
    max_a: Option<usize>,
    neg_depth: Option<usize>,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let text = fs::read_to_string(input).map_err(|e| io_err(input, e))?;
    let file = ParamsFile::parse(&text)?;
    let n = max_a.unwrap_or(file.max_a);
    let d = neg_depth.unwrap_or(file.neg_depth.min(n));
    let start = Instant::now();
    let instance = file.to_instance(n, d)?;
    let report = Checker::new(file.r, n)?.check(&instance)?;
    let report = ReportFile::new(&report, start.elapsed().as_millis() as u64);
    let code = if report.all_passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    match path {
        Some(p) => {
            fs::write(&p, report.to_json() + "\n").map_err(|e| io_err(&p, e))?;
            let v = &report.verdicts;
            let line = |name: &str, pf: PassFail| format!("{name}: {}", pass_word(pf));
            write_out(out, &line("groundRing", v.ground_ring))?;
            write_out(out, &line("weak", v.weak))?;
            write_out(out, &line("wilcoxYu", v.wilcox_yu))?;
            write_out(out, &line("uAdmissible", v.u_admissible))?;
            if let Some(f) = report.failures.first() {
                write_out(
                    out,
                    &format!(
                        "first failure: {} at {}: {} != {}",
                        f.condition, f.index, f.lhs, f.rhs
                    ),
                )?;
            }
            write_out(
                out,
                &format!("certified to truncation N = {}", report.truncation),
            )?;
        }
        None => write_out(out, &report.to_json())?,
    }
    Ok(code)
}

fn pass_word(pf: PassFail) -> &'static str {
    match pf {
        PassFail::Pass => "pass",
        PassFail::Fail => "fail",
    }
}

fn cmd_verify(
    r: usize,
    samples: usize,
    seed: u64,
    max_a: Option<usize>,
    neg_depth: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32> {
    if r == 0 || r > VERIFY_MAX_RANK {
        return Err(Error::OutOfRange(format!(
            "--r {r} is outside the supported range 1..={VERIFY_MAX_RANK}"
        )));
    }
    let mut config = EquivalenceConfig::new(r, samples, seed);
    if let Some(n) = max_a {
        config.max_a = n;
    }
    config.neg_depth = neg_depth.unwrap_or_else(|| config.neg_depth.min(config.max_a));
    let report = verify_equivalence(&config)?;

    let count = |ok: usize, total: usize, verb: &str| {
        let status = if ok == total { "pass" } else { "FAIL" };
        format!("{ok}/{total} {verb} [{status}]")
    };
    write_out(
        out,
        &format!(
            "r = {r}, samples = {samples}, seed = {seed}, truncation N = {}, depth D = {}",
            config.max_a, config.neg_depth
        ),
    )?;
    write_out(
        out,
        &format!(
            "forward (ground ring, weak, Wilcox-Yu, u-admissible): {}",
            count(report.forward_passed(), samples, "pass")
        ),
    )?;
    write_out(
        out,
        &format!(
            "uniqueness (single-delta perturbations): {}",
            count(
                report.perturbations_detected(),
                report.perturbations(),
                "detected"
            )
        ),
    )?;
    write_out(
        out,
        &format!(
            "morphism invariance: {}",
            count(report.morphisms_invariant(), samples, "unchanged")
        ),
    )?;
    for f in &report.symbolic {
        let status = if f.vacuous {
            "vacuous (r-1 = 0 windows)".to_string()
        } else {
            count(f.checked - f.failed(), f.checked, "hold")
        };
        write_out(out, &format!("{}: {status}", f.name))?;
        for what in &f.failures {
            write_out(out, &format!("  failed: {what}"))?;
        }
    }
    let passed = report.all_passed();
    write_out(
        out,
        if passed {
            "result: pass"
        } else {
            "result: FAIL"
        },
    )?;
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

/// Lines `name_index = value` of the requested table; `max` bounds the
/// index for mu and xi (default `2r + 8`).
pub fn table_lines(r: usize, what: TableKind, max: Option<usize>) -> Result<Vec<String>> {
    if r == 0 {
        return Err(Error::InvalidArgument("--r must be at least 1".into()));
    }
    let n = max.unwrap_or_else(|| default_truncation(r));
    Ok(match what {
        TableKind::Mu => mu_table(r, n)?
            .as_slice()
            .iter()
            .enumerate()
            .map(|(a, m)| format!("mu_{a} = {m}"))
            .collect(),
        TableKind::Xi => eta_table_from_series(r, n)?
            .xi_all()
            .iter()
            .enumerate()
            .map(|(a, x)| format!("xi_{a} = {x}"))
            .collect(),
        TableKind::Gamma => gamma_closed_form(r)?
            .as_slice()
            .iter()
            .enumerate()
            .map(|(j, g)| format!("gamma_{} = {g}", j + 1))
            .collect(),
        TableKind::ACoeffs => signed_coeffs(r)?
            .as_slice()
            .iter()
            .enumerate()
            .map(|(j, a)| format!("a_{j} = {a}"))
            .collect(),
    })
}

fn cmd_table(r: usize, what: TableKind, max: Option<usize>, out: &mut dyn Write) -> Result<i32> {
    for line in table_lines(r, what, max)? {
        write_out(out, &line)?;
    }
    Ok(EXIT_PASS)
}
