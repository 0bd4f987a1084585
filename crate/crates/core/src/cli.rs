//! Command-line front end: `spectrum`, `verify` and `action`.
//!
//! Data goes to standard output (or `--out`), diagnostics to standard error.
//! Exit codes: 0 success, 1 numerical failure or failed check, 2 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::Error;
use crate::oracle::{angular_spectrum, DEFAULT_EIGEN_COUNT, DEFAULT_GRID};
use crate::quadrature::{action_swkb, action_swkb_closed, action_wkb, ActionValue};
use crate::quantizers::{build_spectrum_row_with, RowMethods, SpectrumRow};
use crate::verify::{self, CheckOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Significant digits of every float written to the data stream.
pub const SIGNIFICANT_DIGITS: usize = 12;

pub const CSV_HEADER: &str = "m,n_theta,l,lambda2_exact,lambda2_langer,lambda2_swkb,lambda2_wkb,lambda2_oracle,err_swkb,err_wkb,err_oracle";

#[derive(Debug, Parser)]
#[command(
    name = "angular-swkb",
    version,
    about = "WKB, SWKB and eigensolver spectra of the angular momentum operator"
)]
pub struct Cli {
    /// Write the data stream to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate exact, Langer, SWKB, WKB and (optionally) eigensolver values of λ².
    Spectrum(SpectrumArgs),
    /// Run verification suites and report PASS/FAIL per check.
    Verify(VerifyArgs),
    /// Evaluate a single action integral.
    Action(ActionArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// A single azimuthal number.
    #[arg(long, conflicts_with = "m_max")]
    pub m: Option<u32>,
    /// Tabulate every m in 0..=m-max.
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
    /// Comma-separated subset of swkb, wkb, exact (eigensolver), or `all`.
    #[arg(long, default_value = "swkb,wkb", value_parser = parse_methods)]
    pub methods: Methods,
    /// Eigensolver grid size.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Highest m checked (default 20 for shape invariance, 3 for susy).
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Replace every check's tolerance with this value.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ActionArgs {
    #[arg(long, value_enum)]
    pub method: ActionMethodArg,
    #[arg(long)]
    pub m: u32,
    /// E₋ for the SWKB action.
    #[arg(long)]
    pub energy: Option<f64>,
    /// λ for the WKB action.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_enum, default_value_t = ActionPath::Numerical)]
    pub path: ActionPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ShapeInvariance,
    Susy,
    Quadrature,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ActionMethodArg {
    Swkb,
    Wkb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ActionPath {
    Numerical,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Methods {
    pub swkb: bool,
    pub wkb: bool,
    pub oracle: bool,
}

fn parse_methods(s: &str) -> Result<Methods, String> {
    let mut methods = Methods {
        swkb: false,
        wkb: false,
        oracle: false,
    };
    for token in s.split(',').map(str::trim) {
        match token {
            "swkb" => methods.swkb = true,
            "wkb" => methods.wkb = true,
            "exact" | "oracle" => methods.oracle = true,
            "all" => {
                methods = Methods {
                    swkb: true,
                    wkb: true,
                    oracle: true,
                }
            }
            other => {
                return Err(format!(
                    "unknown method `{other}` (expected swkb, wkb, exact, all)"
                ))
            }
        }
    }
    Ok(methods)
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped,
/// scientific notation outside `1e-4 <= |x| < 1e12`.
pub fn format_float(x: f64) -> String {
    format_significant(x, SIGNIFICANT_DIGITS)
}

pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits_only: String = mantissa.chars().filter(|c| *c != '.').collect();
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let exp_sign = if exp < 0 { '-' } else { '+' };
        return format!("{sign}{mantissa}e{exp_sign}{:02}", exp.abs());
    }
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits_only)
    } else {
        let point = exp as usize + 1;
        format!("{}.{}", &digits_only[..point], &digits_only[point..])
    };
    format!("{sign}{}", trim_fraction(&body))
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_field(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

pub fn write_csv<W: Write>(mut w: W, rows: &[SpectrumRow]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.m,
            r.n_theta,
            r.l,
            format_float(r.lambda2_exact),
            format_float(r.lambda2_langer),
            opt_field(r.lambda2_swkb),
            opt_field(r.lambda2_wkb),
            opt_field(r.lambda2_oracle),
            opt_field(r.err_swkb),
            opt_field(r.err_wkb),
            opt_field(r.err_oracle),
        )?;
    }
    Ok(())
}

/// JSON number carrying the same 12 significant digits as the CSV output.
fn json_number(x: f64) -> Value {
    format_float(x)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

pub fn rows_to_json(rows: &[SpectrumRow]) -> Value {
    let rows = rows
        .iter()
        .map(|r| {
            let opt = |v: Option<f64>| v.map_or(Value::Null, json_number);
            let mut obj = Map::new();
            obj.insert("m".into(), r.m.into());
            obj.insert("n_theta".into(), r.n_theta.into());
            obj.insert("l".into(), r.l.into());
            obj.insert("lambda2_exact".into(), json_number(r.lambda2_exact));
            obj.insert("lambda2_langer".into(), json_number(r.lambda2_langer));
            obj.insert("lambda2_swkb".into(), opt(r.lambda2_swkb));
            obj.insert("lambda2_wkb".into(), opt(r.lambda2_wkb));
            obj.insert("lambda2_oracle".into(), opt(r.lambda2_oracle));
            obj.insert("err_swkb".into(), opt(r.err_swkb));
            obj.insert("err_wkb".into(), opt(r.err_wkb));
            obj.insert("err_oracle".into(), opt(r.err_oracle));
            Value::Object(obj)
        })
        .collect();
    Value::Array(rows)
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(Error),
    Io(io::Error),
    ChecksFailed(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numerical(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Computes the rows of `spectrum` in `(m, n_theta)` order.
pub fn spectrum_rows(
    m_values: &[u32],
    n_max: u32,
    methods: Methods,
    grid: usize,
) -> crate::Result<Vec<SpectrumRow>> {
    let row_methods = RowMethods {
        swkb: methods.swkb,
        wkb: methods.wkb,
    };
    let oracle: Vec<Option<Vec<f64>>> = m_values
        .par_iter()
        .map(|&m| {
            methods
                .oracle
                .then(|| angular_spectrum(m, grid, n_max as usize + 1).map(|s| s.eigenvalues))
                .transpose()
        })
        .collect::<crate::Result<_>>()?;
    let pairs: Vec<(usize, u32, u32)> = m_values
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| (0..=n_max).map(move |n| (i, m, n)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, m, n)| {
            let oracle_value = oracle[i].as_ref().map(|eig| eig[n as usize]);
            build_spectrum_row_with(n, m, row_methods, oracle_value)
        })
        .collect()
}

fn cmd_spectrum<W: Write>(args: &SpectrumArgs, out: W) -> Result<(), CliError> {
    let m_values: Vec<u32> = match (args.m, args.m_max) {
        (Some(m), _) => vec![m],
        (None, Some(max)) => (0..=max).collect(),
        (None, None) => vec![0],
    };
    if args.methods.oracle && args.grid < crate::oracle::MIN_GRID {
        return Err(CliError::Usage(format!(
            "--grid must be at least {}",
            crate::oracle::MIN_GRID
        )));
    }
    if args.methods.oracle && args.n_max as usize >= args.grid {
        return Err(CliError::Usage("--n-max must be below --grid".into()));
    }
    let rows = spectrum_rows(&m_values, args.n_max, args.methods, args.grid)?;
    match args.format {
        Format::Csv => write_csv(out, &rows)?,
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &rows_to_json(&rows))
                .map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn write_checks<W: Write>(mut w: W, checks: &[CheckOutcome]) -> io::Result<()> {
    for c in checks {
        writeln!(
            w,
            "{:<44} max_residual={:<20} tol={:<8} {}",
            c.name,
            format_float(c.measured),
            format_float(c.tolerance),
            if c.passed() { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(())
}

fn cmd_verify<W: Write>(args: &VerifyArgs, mut out: W) -> Result<(), CliError> {
    let run = |s: Suite| s == args.suite || args.suite == Suite::All;
    let mut checks = Vec::new();
    if run(Suite::ShapeInvariance) {
        checks.extend(verify::shape_invariance_suite(
            args.m_max.unwrap_or(20),
            args.tol,
        )?);
    }
    if run(Suite::Quadrature) {
        checks.extend(verify::quadrature_suite(args.tol)?);
    }
    if run(Suite::Susy) {
        if args.grid < crate::oracle::MIN_GRID {
            return Err(CliError::Usage(format!(
                "--grid must be at least {}",
                crate::oracle::MIN_GRID
            )));
        }
        eprintln!("running susy checks on a {}-point grid", args.grid);
        checks.extend(verify::susy_suite(
            args.m_max.unwrap_or(3),
            args.grid,
            DEFAULT_EIGEN_COUNT,
            args.tol,
        )?);
    }
    write_checks(&mut out, &checks)?;
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

fn cmd_action<W: Write>(args: &ActionArgs, mut out: W) -> Result<(), CliError> {
    let (numerical, closed): (ActionValue, ActionValue) =
        match (args.method, args.energy, args.lambda) {
            (ActionMethodArg::Swkb, Some(e), None) => {
                (action_swkb(e, args.m)?, action_swkb_closed(e, args.m)?)
            }
            (ActionMethodArg::Wkb, None, Some(lambda)) => {
                let closed = if args.m == 0 {
                    crate::quadrature::ActionValue {
                        value: std::f64::consts::PI * lambda,
                        method: crate::quadrature::ActionMethod::ClosedForm,
                        est_error: 0.0,
                    }
                } else {
                    crate::quadrature::action_wkb_closed(lambda, args.m)?
                };
                (action_wkb(lambda, args.m)?, closed)
            }
            (ActionMethodArg::Swkb, _, _) => {
                return Err(CliError::Usage(
                    "--method swkb takes exactly --energy".into(),
                ))
            }
            (ActionMethodArg::Wkb, _, _) => {
                return Err(CliError::Usage(
                    "--method wkb takes exactly --lambda".into(),
                ))
            }
        };
    match args.path {
        ActionPath::Numerical => writeln!(out, "{}", format_float(numerical.value))?,
        ActionPath::Closed => writeln!(out, "{}", format_float(closed.value))?,
        ActionPath::Both => {
            writeln!(out, "{}", format_float(numerical.value))?;
            writeln!(out, "gap {}", format_float(numerical.value - closed.value))?;
        }
    }
    Ok(())
}

fn dispatch<W: Write>(command: &Command, out: W) -> Result<(), CliError> {
    match command {
        Command::Spectrum(args) => cmd_spectrum(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Action(args) => cmd_action(args, out),
    }
}

/// Parses `argv` and runs the requested command, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.out {
        Some(path) => File::create(path).map_err(CliError::Io).and_then(|f| {
            let mut w = BufWriter::new(f);
            dispatch(&cli.command, &mut w)?;
            w.flush().map_err(CliError::Io)
        }),
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            dispatch(&cli.command, &mut w).and_then(|()| w.flush().map_err(CliError::Io))
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("Run with --help for usage.");
            EXIT_USAGE
        }
        Err(CliError::Numerical(e)) => {
            eprintln!("numerical failure: {e}");
            EXIT_FAILURE
        }
        Err(CliError::Io(e)) => {
            eprintln!("i/o error: {e}");
            EXIT_FAILURE
        }
        Err(CliError::ChecksFailed(n)) => {
            eprintln!("{n} check(s) failed");
            EXIT_FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_float(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_float(std::f64::consts::FRAC_PI_2), "1.57079632679");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(2.0), "2");
        assert_eq!(format_float(2.25), "2.25");
        assert_eq!(format_float(110.25), "110.25");
        assert_eq!(format_float(-0.5), "-0.5");
        assert_eq!(format_float(1e-5), "1e-05");
        assert_eq!(format_float(1.5e-5), "1.5e-05");
        assert_eq!(format_float(1.234e-10), "1.234e-10");
        assert_eq!(format_float(0.000123), "0.000123");
        assert_eq!(format_float(123456789012.0), "123456789012");
        assert_eq!(format_float(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_float(29.999999999996), "30");
        assert_eq!(format_float(0.1 + 0.2), "0.3");
    }

    #[test]
    fn method_lists() {
        let m = parse_methods("swkb,wkb").unwrap();
        assert!(m.swkb && m.wkb && !m.oracle);
        let m = parse_methods("swkb,exact").unwrap();
        assert!(m.swkb && !m.wkb && m.oracle);
        let m = parse_methods("all").unwrap();
        assert!(m.swkb && m.wkb && m.oracle);
        assert!(parse_methods("swkb,foo").is_err());
    }

    #[test]
    fn csv_has_empty_oracle_fields() {
        let rows = spectrum_rows(
            &[0],
            1,
            Methods {
                swkb: true,
                wkb: true,
                oracle: false,
            },
            DEFAULT_GRID,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        let fields: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(&fields[..7], &["0", "1", "1", "2", "2.25", "2", "2.25"]);
        assert_eq!(fields[7], "");
        assert_eq!(fields[10], "");
    }
}
