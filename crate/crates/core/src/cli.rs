//! Command line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse error, 3 domain or
//! definiteness error, 4 resource budget, 5 verification failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::counting::{self, EnumerationOptions};
use crate::epstein::PotterContext;
use crate::error::Error;
use crate::omega;
use crate::quadform::QuadraticForm;

#[derive(Debug, Parser)]
#[command(
    name = "primlattice",
    version,
    about = "Lattice points in ellipses and the Epstein zeta function"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct FormArg {
    /// Form coefficients "a,b,c"; each a decimal or sqrt(k).
    #[arg(long, allow_hyphen_values = true)]
    pub form: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// A(x), B(x), P(x), R(x) at one threshold.
    Count {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Count table and mean |R| curve on a grid up to --ymax, as CSV.
    Sweep {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        ymax: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 100)]
        rows: usize,
        /// Geometric grid from 1 to ymax instead of a linear one.
        #[arg(long)]
        log_step: bool,
        /// Output for the x,A,B,P,R table.
        #[arg(long)]
        out: PathBuf,
        /// Output for the Y,M table; defaults to <out stem>_mean.csv.
        #[arg(long)]
        mean_out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        /// Omit the leading timestamp comment line.
        #[arg(long)]
        no_timestamp: bool,
    },
    /// F1, F2 bound and enclosure of zeta_Q(s).
    Epstein {
        #[command(flatten)]
        form: FormArg,
        /// Complex argument, e.g. "0.75-7.0674i" or "2".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long = "Z", default_value_t = 1000.0)]
        z: f64,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Discriminant, kappa, lambda_1 and main-term coefficients.
    Kappa {
        #[command(flatten)]
        form: FormArg,
    },
    /// Lower bound for K0 through a zeta zero.
    K0 {
        #[command(flatten)]
        form: FormArg,
        #[arg(long = "Z", default_value_t = 1000.0)]
        z: f64,
        /// 1-based zero index; without it the zeros are tried in order.
        #[arg(long)]
        zero_index: Option<usize>,
        /// Also write the report as a CSV row.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Rerun the worked example for m^2 + sqrt(2)mn + sqrt(3)n^2.
    #[command(name = "verify-paper")]
    WorkedExample,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<i32, CliError>;

/// Formats `v` with `digits` significant digits, `%g` style.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if exp < -5 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, v);
        let (mantissa, e) = s.split_once('e').expect("scientific format");
        format!("{}e{}", trim_zeros(mantissa), e)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Parses `"a"`, `"bi"`, `"a+bi"`, `"a-bi"` or `"a,b"`.
pub fn parse_complex(text: &str) -> Result<Complex64, Error> {
    let err = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err("empty complex number"));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|_| err("not a complex number"));
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex64::new(num(re)?, num(im)?));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |s: &str| match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(s),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn options(workers: Option<usize>) -> EnumerationOptions {
    match workers {
        Some(w) => EnumerationOptions::with_workers(w),
        None => EnumerationOptions::default(),
    }
}

fn parse_form(arg: &FormArg) -> Result<QuadraticForm, Error> {
    arg.form.parse()
}

fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", fmt_sig(z.re, 12), sign, fmt_sig(z.im.abs(), 12))
}

fn timestamp_line() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    format!("# generated at unix time {secs}")
}

fn default_mean_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map_or_else(|| "sweep".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}_mean.csv"))
}

/// The x grid used by `sweep`.
pub fn sweep_grid(ymax: f64, rows: usize, log_step: bool) -> Vec<f64> {
    (1..=rows)
        .map(|i| {
            let frac = i as f64 / rows as f64;
            if log_step {
                (ymax.ln() * frac).exp()
            } else {
                ymax * frac
            }
        })
        .map(|x| x.min(ymax))
        .enumerate()
        .map(|(i, x)| if i + 1 == rows { ymax } else { x })
        .collect()
}

fn execute(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Count { form, x, workers } => {
            let q = parse_form(&form)?;
            let list = counting::enumerate_with(&q, x, &options(workers))?;
            let r = list.count(x)?;
            writeln!(
                out,
                "x={} A={} B={} P={} R={}",
                fmt_sig(r.x, 12),
                r.all,
                r.primitive,
                fmt_sig(r.p, 12),
                fmt_sig(r.r, 12)
            )?;
            Ok(0)
        }
        Command::Sweep {
            form,
            ymax,
            rows,
            log_step,
            out: path,
            mean_out,
            workers,
            no_timestamp,
        } => {
            let q = parse_form(&form)?;
            if !(ymax >= 1.0) || rows == 0 {
                return Err(Error::Domain(format!(
                    "sweep needs ymax >= 1 and rows >= 1, got {ymax}, {rows}"
                ))
                .into());
            }
            let xs = sweep_grid(ymax, rows, log_step);
            let list = counting::enumerate_with(&q, ymax, &options(workers))?;
            let counts: Vec<_> = xs
                .iter()
                .map(|&x| list.count(x))
                .collect::<Result<_, _>>()?;
            let ys: Vec<f64> = xs.iter().copied().filter(|&y| y >= 1.0).collect();
            let integrals = list.abs_r_integrals(&ys)?;
            let curve: Vec<(f64, f64)> = ys
                .iter()
                .zip(integrals)
                .map(|(&y, i)| (y, y.powf(-1.25) * i))
                .collect();

            let mean_path = mean_out.unwrap_or_else(|| default_mean_path(&path));
            for (p, is_counts) in [(&path, true), (&mean_path, false)] {
                let mut w = BufWriter::new(File::create(p)?);
                if !no_timestamp {
                    writeln!(w, "{}", timestamp_line())?;
                }
                if is_counts {
                    counting::write_count_csv(&mut w, &counts)?;
                } else {
                    counting::write_mean_csv(&mut w, &curve)?;
                }
                w.flush()?;
            }
            writeln!(
                out,
                "wrote {} rows to {} and {} rows to {}",
                counts.len(),
                path.display(),
                curve.len(),
                mean_path.display()
            )?;
            Ok(0)
        }
        Command::Epstein {
            form,
            s,
            z,
            workers,
        } => {
            let q = parse_form(&form)?;
            let s = parse_complex(&s)?;
            if !(s.re > -0.25) {
                return Err(Error::Domain(format!(
                    "the approximate equation needs Re s > -1/4, got s = {s}"
                ))
                .into());
            }
            let ev = PotterContext::with_options(&q, z, &options(workers))?.evaluate(s)?;
            writeln!(out, "s = {}", fmt_complex(ev.s))?;
            writeln!(out, "Z = {}", fmt_sig(ev.z, 12))?;
            writeln!(out, "F1 = {}", fmt_complex(ev.f1))?;
            writeln!(out, "|F1| = {}", fmt_sig(ev.f1.norm(), 12))?;
            writeln!(out, "F2_bound = {}", fmt_sig(ev.f2_bound, 12))?;
            writeln!(out, "radius = {}", fmt_sig(ev.radius(), 12))?;
            writeln!(out, "certified = {}", ev.certified)?;
            Ok(0)
        }
        Command::Kappa { form } => {
            let q = parse_form(&form)?;
            let k = q.constants();
            writeln!(out, "D = {}", fmt_sig(q.discriminant(), 12))?;
            writeln!(out, "kappa = {}", fmt_sig(k.kappa, 12))?;
            writeln!(out, "lambda1 = {}", fmt_sig(k.lambda1, 12))?;
            writeln!(out, "main_all = {}", fmt_sig(k.main_all, 12))?;
            writeln!(out, "main_prim = {}", fmt_sig(k.main_prim, 12))?;
            Ok(0)
        }
        Command::K0 {
            form,
            z,
            zero_index,
            out: csv_path,
            workers,
        } => {
            let q = parse_form(&form)?;
            let ctx = PotterContext::with_options(&q, z, &options(workers))?;
            let report = match zero_index {
                Some(i) => omega::k0_lower_bound_in(&ctx, crate::special::zeta_zero(i)?)?,
                None => omega::k0_search(&q, z)?,
            };
            write!(out, "{}", report.to_key_value())?;
            if let Some(p) = csv_path {
                let mut w = BufWriter::new(File::create(p)?);
                writeln!(w, "{}", omega::BoundReport::CSV_HEADER)?;
                writeln!(w, "{}", report.to_csv_row())?;
                w.flush()?;
            }
            Ok(if report.valid { 0 } else { 5 })
        }
        Command::WorkedExample => {
            let lines = omega::verify_worked_example()?;
            let mut all = true;
            for l in &lines {
                all &= l.pass;
                writeln!(
                    out,
                    "{:<24} {:>20}  expected {:<20} {}",
                    l.name,
                    fmt_sig(l.computed, 12),
                    l.reference,
                    if l.pass { "PASS" } else { "FAIL" }
                )?;
            }
            Ok(if all { 0 } else { 5 })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
