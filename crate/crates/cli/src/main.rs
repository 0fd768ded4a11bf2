use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use theta_zeros::analysis::{density, total_mass};
use theta_zeros::eisenstein::eisenstein_series;
use theta_zeros::lattice::{lattice_count, DEFAULT_BUDGET};
use theta_zeros::numeric::{theta_gamma_eval_with, ComplexPoint, GammaMethod, Precision};
use theta_zeros::series::{lambda_series, theta_base, theta_gamma_series, SeriesJson, ThetaIndex};
use theta_zeros::verify::{run_verify, Fault, VerifyConfig, VerifySummary};
use theta_zeros::zeros::{classify_roots, theta_zeros_with, RootInventory, ZeroOptions, ZeroRecord};
use theta_zeros::{Complex64, Error};

const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(name = "theta-zeros", version, about = "Theta functions of the lattices Γ_8k: series, zeros and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    /// Θ_Γ8k in q.
    Gamma,
    /// λ in q^{1/2}.
    Lambda,
    /// Normalised Eisenstein series in q.
    Eisenstein,
    Theta2,
    Theta3,
    Theta4,
    /// Representation numbers by direct enumeration.
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    ThetaPow,
    LambdaPoly,
    QSeries,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Export an exact q-series.
    Series {
        #[arg(long, value_enum, default_value = "gamma")]
        kind: SeriesKind,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// Weight of the Eisenstein series.
        #[arg(long, default_value_t = 4)]
        weight: u32,
        /// Candidate-vector budget for `--kind lattice`.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Zeros of Θ_Γ8k on the line Re τ = 1/2, highest first.
    Zeros {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// All 2k roots of 1 + z^{2k} + (1 − z)^{2k}, grouped by geometry.
    Roots {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Limiting height density on a grid, CSV only.
    Density {
        /// "a:b:step" with √3/2 ≤ a ≤ b.
        #[arg(long, default_value = "1:6:0.25")]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate Θ_Γ8k at one point.
    Eval {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long)]
        im: f64,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        #[arg(long, value_enum, default_value = "double")]
        precision: PrecisionArg,
        #[arg(long, value_enum, default_value = "lambda-poly")]
        method: MethodArg,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long)]
        quick: bool,
        #[arg(long, hide = true, value_parser = parse_fault)]
        inject_fault: Option<Fault>,
        /// Machine-readable summary instead of the table.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Library(Error),
    Io(io::Error),
    Verify(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Library(Error::InvalidArgument(_) | Error::BelowImaginaryFloor { .. } | Error::UnitMismatch { .. }) => {
                EXIT_USAGE
            }
            Failure::Library(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            Failure::Library(_) => EXIT_NUMERICAL,
            Failure::Io(_) => 1,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
            Failure::Io(e) => format!("i/o error: {e}"),
            Failure::Verify(names) => format!("verification failed: {}", names.join(", ")),
        }
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv(out: &Option<PathBuf>, header: &[&str], rows: Vec<Vec<String>>, footer: Option<String>) -> Result<(), Failure> {
    let mut w = sink(out)?;
    {
        let mut c = csv::Writer::from_writer(&mut w);
        c.write_record(header)?;
        for r in rows {
            c.write_record(&r)?;
        }
        c.flush()?;
    }
    if let Some(f) = footer {
        writeln!(w, "{f}")?;
    }
    w.flush()?;
    Ok(())
}

fn series_json(kind: SeriesKind, k: u32, order: usize, weight: u32, budget: u64) -> Result<SeriesJson, Failure> {
    let s = match kind {
        SeriesKind::Gamma => theta_gamma_series(k, order)?,
        SeriesKind::Lambda => lambda_series(order)?,
        SeriesKind::Theta2 => theta_base(ThetaIndex::Two, order),
        SeriesKind::Theta3 => theta_base(ThetaIndex::Three, order),
        SeriesKind::Theta4 => theta_base(ThetaIndex::Four, order),
        SeriesKind::Eisenstein => {
            let e = eisenstein_series(weight, order)?;
            return Ok(SeriesJson { unit: "1".into(), order: e.order(), coeffs: e.to_strings() });
        }
        SeriesKind::Lattice => {
            let counts = lattice_count(k, order, budget)?;
            return Ok(SeriesJson { unit: "1".into(), order, coeffs: counts.iter().map(u64::to_string).collect() });
        }
    };
    Ok(s.to_json())
}

fn zero_rows(z: &[ZeroRecord]) -> Vec<Vec<String>> {
    z.iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.m.to_string(),
                num(r.y),
                num(r.phi),
                num(r.residual_poly),
                num(r.residual_qseries),
            ]
        })
        .collect()
}

fn root_rows(inv: &RootInventory) -> Vec<Vec<String>> {
    let groups: [(&str, &Vec<Complex64>); 5] = [
        ("line_upper", &inv.line_upper),
        ("line_lower", &inv.line_lower),
        ("unit_arc", &inv.unit_arc),
        ("shifted_arc", &inv.shifted_arc),
        ("rho", &inv.rho),
    ];
    groups
        .iter()
        .flat_map(|(name, pts)| pts.iter().map(move |z| vec![name.to_string(), num(z.re), num(z.im)]))
        .collect()
}

/// Parses "a:b:step" into the grid points a, a + step, … ≤ b.
fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("malformed grid {spec:?}, expected \"a:b:step\""));
    let parts: Vec<f64> =
        spec.split(':').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let [a, b, step] = parts[..] else { return Err(bad()) };
    if !(a.is_finite() && b.is_finite() && step.is_finite()) || step <= 0.0 || b < a {
        return Err(bad());
    }
    if a < 3f64.sqrt() / 2.0 - 1e-12 {
        return Err(Failure::Usage(format!("grid starts at {a}, below √3/2")));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| a + i as f64 * step).collect())
}

#[derive(Serialize)]
struct EvalOutput {
    k: u32,
    re: f64,
    im: f64,
    value_re: f64,
    value_im: f64,
    tail_bound: f64,
}

fn print_table(s: &VerifySummary, out: &Option<PathBuf>) -> Result<(), Failure> {
    let mut w = sink(out)?;
    let width = s.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &s.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(w, "{tag}  {:width$}  {:>7.2}s  {}", c.name, c.seconds, c.detail)?;
    }
    writeln!(w, "{}", if s.passed { "all checks passed" } else { "some checks failed" })?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Series { kind, k, order, weight, budget, output } => {
            if output.format == Format::Csv {
                let s = series_json(kind, k, order, weight, budget)?;
                let rows = s.coeffs.iter().enumerate().map(|(n, c)| vec![n.to_string(), c.clone()]).collect();
                return write_csv(&output.out, &["n", "coeff"], rows, Some(format!("# unit,{}", s.unit)));
            }
            write_json(&output.out, &series_json(kind, k, order, weight, budget)?)
        }
        Command::Zeros { k, tol, output } => {
            let opts = ZeroOptions { tol, ..ZeroOptions::default() };
            let z = theta_zeros_with(k, opts)?;
            match output.format {
                Format::Json => write_json(&output.out, &z),
                Format::Csv => write_csv(
                    &output.out,
                    &["k", "m", "y", "phi", "residual_poly", "residual_qseries"],
                    zero_rows(&z),
                    None,
                ),
            }
        }
        Command::Roots { k, tol, output } => {
            let inv = classify_roots(k, tol)?;
            match output.format {
                Format::Json => write_json(&output.out, &inv),
                Format::Csv => write_csv(
                    &output.out,
                    &["set", "re", "im"],
                    root_rows(&inv),
                    Some(format!("# rho_multiplicity,{}", inv.rho_multiplicity)),
                ),
            }
        }
        Command::Density { grid, out } => {
            let ys = parse_grid(&grid)?;
            let mut rows = Vec::with_capacity(ys.len());
            for y in ys {
                let asym = 48.0 * (-std::f64::consts::PI * y).exp();
                rows.push(vec![num(y), num(density(y)?), num(asym)]);
            }
            let footer = format!("# total_mass,{}", num(total_mass()?));
            write_csv(&out, &["y", "density", "asymptotic"], rows, Some(footer))
        }
        Command::Eval { k, re, im, tol, precision, method, output } => {
            let precision = match precision {
                PrecisionArg::Double => Precision::Double,
                PrecisionArg::Extended => Precision::Extended,
            };
            let method = match method {
                MethodArg::ThetaPow => GammaMethod::ThetaPow,
                MethodArg::LambdaPoly => GammaMethod::LambdaPoly,
                MethodArg::QSeries => GammaMethod::QSeries,
            };
            let r = theta_gamma_eval_with(k, ComplexPoint { re, im }, tol, method, precision)?;
            let o = EvalOutput { k, re, im, value_re: r.value.re, value_im: r.value.im, tail_bound: r.tail_bound };
            match output.format {
                Format::Json => write_json(&output.out, &o),
                Format::Csv => write_csv(
                    &output.out,
                    &["k", "re", "im", "value_re", "value_im", "tail_bound"],
                    vec![vec![k.to_string(), num(re), num(im), num(o.value_re), num(o.value_im), num(o.tail_bound)]],
                    None,
                ),
            }
        }
        Command::Verify { quick, inject_fault, format, out } => {
            let summary = run_verify(&VerifyConfig { quick, inject_fault });
            match format {
                None => print_table(&summary, &out)?,
                Some(Format::Json) => write_json(&out, &summary)?,
                Some(Format::Csv) => write_csv(
                    &out,
                    &["name", "passed", "seconds", "detail"],
                    summary
                        .checks
                        .iter()
                        .map(|c| vec![c.name.clone(), c.passed.to_string(), num(c.seconds), c.detail.clone()])
                        .collect(),
                    None,
                )?,
            }
            if !summary.passed {
                return Err(Failure::Verify(summary.failed));
            }
            Ok(())
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("THETA_ZEROS_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| Failure::Usage(format!("THETA_ZEROS_THREADS={v:?} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot size thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("theta-zeros: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
