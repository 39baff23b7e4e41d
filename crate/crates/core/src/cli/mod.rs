//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed regression check or internal numeric
//! failure, 2 invalid flags or arguments, 3 precision budget exceeded,
//! 4 ill-conditioned Galerkin basis.

pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ball::{assemble_spectrum, assemble_spectrum_auto, ProblemSpec, ScanConfig};
use crate::bounds::{ball_bounds, LogValue};
use crate::error::Error;
use crate::galerkin::{box_forms, interval_forms, radial_forms, Forms};
use crate::verify::{run_suite, Suite, SuiteParams};
use output::{Field, Record, Report};

#[derive(Parser, Debug)]
#[command(name = "polyharmonic", version, about = "Polyharmonic Dirichlet eigenvalues, bounds and checks")]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalues of the unit ball, counted with multiplicity.
    Spectrum(SpectrumArgs),
    /// Closed-form bounds for the first eigenvalue of the unit ball.
    Bounds(BoundsArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Rayleigh-Ritz values from an exact polynomial basis.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub t: u32,
    #[arg(long, default_value_t = 10)]
    pub count: u64,
    /// Only print entries of degree at most this.
    #[arg(long)]
    pub ell_max: Option<u32>,
    /// Scan radius in ρ = λ^(1/(2t)); chosen automatically if absent.
    #[arg(long)]
    pub rho_max: Option<f64>,
}

/// Inclusive range `A..B`.
fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a == 0 || b < a {
        return Err(format!("need 1 <= A <= B, got {s}"));
    }
    Ok((a, b))
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, conflicts_with = "m_range", required_unless_present = "m_range")]
    pub m: Option<u32>,
    /// Inclusive range of m, e.g. `1..5`.
    #[arg(long, value_parser = parse_range)]
    pub m_range: Option<(u32, u32)>,
    /// Order gap: bounds for λ_1 of the (m, m-h) problem.
    #[arg(long, default_value_t = 0)]
    pub h: u32,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
    pub suite: String,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, conflicts_with = "m_range")]
    pub m: Option<u32>,
    #[arg(long, value_parser = parse_range)]
    pub m_range: Option<(u32, u32)>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub count: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Interval,
    Box,
    Radial,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub geometry: GeometryArg,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub t: u32,
    /// Basis size (per coordinate for boxes).
    #[arg(long, default_value_t = 12)]
    pub basis: u32,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Dimension of the ball (radial).
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    /// Angular degree (radial).
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
    /// Half-lengths of the box, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sides: Vec<f64>,
}

/// Library error mapped to an exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => 2,
        Error::Range { .. } => 3,
        Error::Conditioning(_) => 4,
        Error::Numeric(_) | Error::Consistency(_) => 1,
    }
}

fn explain(e: &Error) -> String {
    match e {
        Error::Range { .. } => format!(
            "{e}\nthe series evaluators are accurate for |z| <= {}; this is the precision budget",
            crate::specfun::Z_MAX
        ),
        Error::Conditioning(_) => format!("{e}\ntry a smaller --basis"),
        _ => e.to_string(),
    }
}

fn plain_or_overflow(v: Option<f64>) -> Field {
    v.map_or_else(|| "overflow".into(), Field::Num)
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<Report, Error> {
    let spec = ProblemSpec::new(a.d, a.m, a.t)?;
    let s = match a.rho_max {
        Some(r) => assemble_spectrum(spec, a.count, &ScanConfig::with_rho_max(r))?,
        None => assemble_spectrum_auto(spec, a.count)?,
    };
    // one row per ordinal, so degenerate eigenvalues repeat
    let rows = s
        .entries
        .iter()
        .filter(|e| a.ell_max.is_none_or(|l| e.ell <= l))
        .flat_map(|e| (e.ordinal..e.ordinal + e.multiplicity).map(move |k| (k, e)))
        .take_while(|&(k, _)| k <= a.count)
        .map(|(k, e)| -> Record {
            vec![
                ("ordinal", k.into()),
                ("lambda", e.lambda.into()),
                ("rho", e.rho.into()),
                ("ell", e.ell.into()),
                ("multiplicity", e.multiplicity.into()),
            ]
        })
        .collect();
    Ok(Report {
        command: "spectrum",
        parameters: vec![
            ("d", a.d.into()),
            ("m", a.m.into()),
            ("t", a.t.into()),
            ("count", a.count.into()),
            ("ell_max", Field::opt_int(a.ell_max)),
            ("rho_max", s.rho_max.into()),
        ],
        rows,
        warnings: s.warnings,
    })
}

fn ln_field(v: LogValue) -> Field {
    v.ln_mag.into()
}

fn cmd_bounds(a: &BoundsArgs) -> Result<Report, Error> {
    let (lo, hi) = a.m_range.unwrap_or_else(|| {
        let m = a.m.expect("clap requires --m or --m-range");
        (m, m)
    });
    let mut rows = Vec::new();
    let mut overflow = false;
    for m in lo..=hi {
        let b = ball_bounds(a.d, m, a.h)?;
        overflow |= b.lower_plain.is_none() || b.upper_plain.is_none();
        rows.push(vec![
            ("d", a.d.into()),
            ("m", m.into()),
            ("h", a.h.into()),
            ("t", b.spec.t.into()),
            ("ln_lower", ln_field(b.lower)),
            ("ln_upper", ln_field(b.upper)),
            ("lower", plain_or_overflow(b.lower_plain)),
            ("upper", plain_or_overflow(b.upper_plain)),
            ("normalized_lower", b.normalized_lower.into()),
            ("normalized_upper", b.normalized_upper.into()),
            ("two_term", b.asymptotic_two_term.into()),
            ("ln_navier", ln_field(b.navier)),
            ("lower_source", b.lower_source.into()),
            ("upper_source", b.upper_source.into()),
        ]);
    }
    let mut warnings = Vec::new();
    if overflow {
        warnings.push(format!(
            "plain values at or above 2^53 are marked overflow; use the ln_ columns (limit {})",
            crate::bounds::PLAIN_LIMIT
        ));
    }
    Ok(Report {
        command: "bounds",
        parameters: vec![
            ("d", a.d.into()),
            ("m_first", lo.into()),
            ("m_last", hi.into()),
            ("h", a.h.into()),
        ],
        rows,
        warnings,
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<(Report, bool), Error> {
    let suite: Suite = a.suite.parse()?;
    let params = SuiteParams {
        d: a.d,
        m: a.m,
        m_range: a.m_range,
        t: a.t,
        count: a.count,
    };
    let reports = run_suite(suite, &params);
    let failed = reports.iter().any(|r| r.is_regression_failure());
    let mut warnings = Vec::new();
    let skipped = reports.iter().filter(|r| r.verdict == crate::verify::Verdict::Skipped).count();
    if skipped > 0 {
        warnings.push(format!("{skipped} checks skipped; see the note column"));
    }
    let rows = reports
        .iter()
        .map(|r| -> Record {
            let p = r.params;
            vec![
                ("check", r.check.as_str().into()),
                ("d", Field::opt_int(p.d)),
                ("m", Field::opt_int(p.m)),
                ("t", Field::opt_int(p.t)),
                ("s", Field::opt_int(p.s)),
                ("h", Field::opt_int(p.h)),
                ("k", Field::opt_int(p.k.map(|k| k as i64))),
                ("ell", Field::opt_int(p.ell)),
                ("lhs", r.lhs.into()),
                ("rhs", r.rhs.into()),
                ("margin", r.margin.into()),
                ("verdict", r.verdict.as_str().into()),
                ("tolerance", r.tolerance.into()),
                ("regression", r.regression.into()),
                ("note", r.note.as_str().into()),
            ]
        })
        .collect();
    let report = Report {
        command: "verify",
        parameters: vec![
            ("suite", suite.name().into()),
            ("d", Field::opt_int(a.d)),
            ("m", Field::opt_int(a.m)),
            ("m_first", Field::opt_int(a.m_range.map(|r| r.0))),
            ("m_last", Field::opt_int(a.m_range.map(|r| r.1))),
            ("t", Field::opt_int(a.t)),
            ("count", Field::opt_int(a.count.map(|k| k as i64))),
        ],
        rows,
        warnings,
    };
    Ok((report, failed))
}

fn oracle_forms(a: &OracleArgs, n: u32) -> Result<Forms, Error> {
    match a.geometry {
        GeometryArg::Interval => interval_forms(a.m, a.t, n),
        GeometryArg::Box => {
            if a.sides.is_empty() {
                return Err(Error::Domain("--sides is required for a box".into()));
            }
            box_forms(a.m, a.t, &a.sides, n)
        }
        GeometryArg::Radial => radial_forms(a.m, a.t, a.ell, a.d, n),
    }
}

fn cmd_oracle(a: &OracleArgs) -> Result<Report, Error> {
    if a.count == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }
    let vals = oracle_forms(a, a.basis)?.ritz_values(a.count)?;
    let prev = if a.basis > 2 {
        Some(oracle_forms(a, a.basis - 2)?.ritz_values(a.count)?)
    } else {
        None
    };
    let rows = vals
        .iter()
        .enumerate()
        .map(|(i, &v)| -> Record {
            let p = prev.as_ref().and_then(|p| p.get(i).copied());
            vec![
                ("index", (i as u64 + 1).into()),
                ("value", v.into()),
                ("value_basis_minus_2", Field::opt_num(p)),
                ("relative_change", Field::opt_num(p.map(|p| (p - v).abs() / v.abs()))),
            ]
        })
        .collect();
    let geometry = match a.geometry {
        GeometryArg::Interval => "interval",
        GeometryArg::Box => "box",
        GeometryArg::Radial => "radial",
    };
    let mut parameters = vec![("geometry", geometry.into()), ("m", a.m.into()), ("t", a.t.into())];
    match a.geometry {
        GeometryArg::Radial => {
            parameters.push(("d", a.d.into()));
            parameters.push(("ell", a.ell.into()));
        }
        GeometryArg::Box => {
            let s: Vec<String> = a.sides.iter().map(|&x| output::fmt17(x)).collect();
            parameters.push(("sides", s.join(",").into()));
        }
        GeometryArg::Interval => {}
    }
    parameters.push(("basis", a.basis.into()));
    parameters.push(("count", (a.count as u64).into()));
    let mut warnings = Vec::new();
    if vals.len() < a.count {
        warnings.push(format!("basis has only {} functions", vals.len()));
    }
    Ok(Report {
        command: "oracle",
        parameters,
        rows,
        warnings,
    })
}

fn execute(cli: &Cli) -> Result<(Report, bool), Error> {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a).map(|r| (r, false)),
        Command::Bounds(a) => cmd_bounds(a).map(|r| (r, false)),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a).map(|r| (r, false)),
    }
}

fn emit(cli: &Cli, report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    let mut file;
    let w: &mut dyn Write = match &cli.out {
        Some(p) => {
            file = File::create(p)?;
            &mut file
        }
        None => out,
    };
    match cli.format {
        Format::Csv => report.write_csv(&mut *w)?,
        Format::Json => w.write_all(report.to_json().as_bytes())?,
    }
    w.flush()
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.threads {
        Some(0) => {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return 2;
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => {
                let _ = writeln!(err, "error: cannot start {n} threads: {e}");
                return 1;
            }
        },
        None => execute(&cli),
    };
    match result {
        Ok((report, failed)) => {
            if let Err(e) = emit(&cli, &report, out) {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return 1;
            }
            for w in &report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            if failed {
                let _ = writeln!(err, "error: regression check failed");
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", explain(&e));
            exit_code(&e)
        }
    }
}
