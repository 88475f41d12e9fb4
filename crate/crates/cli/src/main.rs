//! `spirallike`: radii of spirallikeness and starlikeness, boundary curves and
//! seeded verification runs from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or
//! domain errors.

mod output;

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spirallike::radii::{radius_r1, radius_r2, radius_table, DEFAULT_R1_TOL};
use spirallike::subordination::{psi, DEFAULT_GRID_N};
use spirallike::verify::{
    falsify_theorem2, verify_differential_identity, verify_lemma1, verify_nunokawa_bound, verify_theorem1,
    verify_theorem2, DEFAULT_SAFETY,
};
use spirallike::{caratheodory_disc, p_lambda, q_lambda, Angle, DiscPoint};

use output::{emit, Table};

/// Grid endpoints are clipped this far inside `(-π/2, π/2)`.
const GRID_EDGE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "spirallike", version, about = "Radii of spirallikeness and starlikeness for Robertson functions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Read tilt angles in degrees instead of radians (output stays in radians).
    #[arg(long, global = true)]
    degrees: bool,

    /// Worker threads for parallel runs; 0 picks one per core.
    #[arg(long, env = "SPIRALLIKE_THREADS", default_value_t = 0, global = true)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// R1 and/or R2 for one tilt or a grid of tilts.
    Radius {
        #[arg(long, value_enum, default_value_t = Kind::Both)]
        kind: Kind,
        #[command(flatten)]
        lambdas: LambdaChoice,
        /// Bisection tolerance for R1.
        #[arg(long, default_value_t = DEFAULT_R1_TOL)]
        tol: f64,
    },
    /// The majorant psi(r) whose crossing of 1 defines R1.
    Psi {
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = DEFAULT_GRID_N)]
        grid_n: usize,
        #[arg(long, default_value_t = 1e-12)]
        refine_tol: f64,
    },
    /// Boundary samples of Q_lambda or P_lambda on |z| = rho, or the disc
    /// containing p(|z| = rho).
    Curve {
        #[arg(long, value_enum)]
        kind: CurveKind,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long)]
        rho: f64,
        /// Number of equispaced angles.
        #[arg(long, default_value_t = 256)]
        n: usize,
    },
    /// Seeded verification of one claim; writes a JSON report.
    Verify {
        #[arg(long, value_enum)]
        claim: ClaimArg,
        /// Not needed for the nunokawa claim.
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fraction of the guaranteed radius to test on.
        #[arg(long, default_value_t = DEFAULT_SAFETY)]
        safety: f64,
        /// Search for starlikeness failures on |z| = safety instead (theorem2
        /// only); exits 1 if one is found.
        #[arg(long)]
        falsify: bool,
        /// Grid size for the differential-identity claim.
        #[arg(long, default_value_t = 64)]
        grid_n: usize,
    },
    /// `lambda,r1,r2` over a grid of tilts.
    Table {
        /// `start:end:count`, endpoints inclusive.
        #[arg(long, allow_hyphen_values = true)]
        lambda_grid: GridSpec,
        #[arg(long, default_value_t = DEFAULT_R1_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct LambdaChoice {
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// `start:end:count`, endpoints inclusive.
    #[arg(long, allow_hyphen_values = true)]
    lambda_grid: Option<GridSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    R1,
    R2,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveKind {
    #[value(name = "q_lambda")]
    QLambda,
    #[value(name = "p_lambda")]
    PLambda,
    Disc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClaimArg {
    Lemma1,
    Theorem1,
    Corollary1,
    Theorem2,
    DifferentialIdentity,
    Nunokawa,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct GridSpec {
    start: f64,
    end: f64,
    count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, count] = parts[..] else {
            return Err(format!("expected start:end:count, got {s:?}"));
        };
        let start: f64 = start.parse().map_err(|e| format!("start {start:?}: {e}"))?;
        let end: f64 = end.parse().map_err(|e| format!("end {end:?}: {e}"))?;
        let count: usize = count.parse().map_err(|e| format!("count {count:?}: {e}"))?;
        if !start.is_finite() || !end.is_finite() {
            return Err("grid endpoints must be finite".into());
        }
        if count == 0 {
            return Err("grid count must be >= 1".into());
        }
        Ok(GridSpec { start, end, count })
    }
}

impl GridSpec {
    /// Equispaced values, endpoints included and clipped into the tilt range.
    fn values(&self, degrees: bool) -> Vec<f64> {
        let edge = FRAC_PI_2 - GRID_EDGE;
        let (start, end) = (to_radians(self.start, degrees), to_radians(self.end, degrees));
        let (start, end) = (start.clamp(-edge, edge), end.clamp(-edge, edge));
        if self.count == 1 {
            return vec![start];
        }
        let step = (end - start) / (self.count - 1) as f64;
        (0..self.count).map(|k| if k + 1 == self.count { end } else { start + step * k as f64 }).collect()
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Library(spirallike::Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<spirallike::Error> for CliError {
    fn from(e: spirallike::Error) -> Self {
        CliError::Library(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// What a command produced, and whether it counts as a pass.
struct Rendered {
    bytes: Vec<u8>,
    passed: bool,
}

impl Rendered {
    fn ok(bytes: Vec<u8>) -> Self {
        Rendered { bytes, passed: true }
    }

    fn table(table: &Table, format: Format) -> Result<Self, CliError> {
        Ok(Rendered::ok(match format {
            Format::Csv => table.to_csv()?,
            Format::Json => json_line(table.to_json()),
        }))
    }
}

fn json_line(mut s: String) -> Vec<u8> {
    s.push('\n');
    s.into_bytes()
}

fn to_radians(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

fn angle(x: f64, degrees: bool) -> Result<Angle, CliError> {
    Ok(Angle::new(to_radians(x, degrees))?)
}

fn check_rho(rho: f64) -> Result<(), CliError> {
    if !(0.0..1.0).contains(&rho) {
        return Err(CliError::Usage(format!("--rho {rho} must be in [0, 1)")));
    }
    Ok(())
}

fn cmd_radius(cli: &Cli, kind: Kind, lambdas: &LambdaChoice, tol: f64) -> Result<Rendered, CliError> {
    let angles: Vec<Angle> = match (lambdas.lambda, &lambdas.lambda_grid) {
        (Some(l), _) => vec![angle(l, cli.degrees)?],
        (None, Some(g)) => g.values(cli.degrees).into_iter().map(Angle::new).collect::<Result<_, _>>()?,
        (None, None) => unreachable!("clap requires one of --lambda, --lambda-grid"),
    };
    let want_r1 = kind != Kind::R2;
    let want_r2 = kind != Kind::R1;

    let mut reports = Vec::new();
    for &a in &angles {
        if want_r1 {
            reports.push(radius_r1(a, tol)?);
        }
        if want_r2 {
            reports.push(radius_r2(a));
        }
    }
    if cli.format == Format::Json {
        let s = serde_json::to_string_pretty(&reports).expect("report serialization is infallible");
        return Ok(Rendered::ok(json_line(s)));
    }

    let mut header = vec!["lambda"];
    if want_r1 {
        header.push("r1");
    }
    if want_r2 {
        header.push("r2");
    }
    let per_row = header.len() - 1;
    let mut table = Table::new(header);
    for (a, chunk) in angles.iter().zip(reports.chunks(per_row)) {
        let mut row = vec![a.radians()];
        row.extend(chunk.iter().map(|r| r.value));
        table.push(row);
    }
    Rendered::table(&table, cli.format)
}

fn cmd_psi(cli: &Cli, lambda: f64, r: f64, grid_n: usize, refine_tol: f64) -> Result<Rendered, CliError> {
    let a = angle(lambda, cli.degrees)?;
    let v = psi(a, r, grid_n, refine_tol)?;
    let mut table = Table::new(vec!["lambda", "r", "psi", "witness_theta"]);
    table.push(vec![a.radians(), r, v.value, v.witness_theta]);
    Rendered::table(&table, cli.format)
}

fn cmd_curve(cli: &Cli, kind: CurveKind, lambda: f64, rho: f64, n: usize) -> Result<Rendered, CliError> {
    let a = angle(lambda, cli.degrees)?;
    check_rho(rho)?;
    if kind == CurveKind::Disc {
        let d = caratheodory_disc(a, rho)?;
        let mut table = Table::new(vec!["r", "center_re", "center_im", "radius"]);
        table.push(vec![rho, d.center.re, d.center.im, d.radius]);
        return Rendered::table(&table, cli.format);
    }
    if n == 0 {
        return Err(CliError::Usage("--n must be >= 1".into()));
    }
    let mut table = Table::new(vec!["theta", "re", "im"]);
    for k in 0..n {
        let theta = TAU * k as f64 / n as f64;
        let z = DiscPoint::from_polar(rho, theta)?;
        let w = match kind {
            CurveKind::QLambda => q_lambda(a, z),
            CurveKind::PLambda => p_lambda(a, z),
            CurveKind::Disc => unreachable!(),
        };
        table.push(vec![theta, w.re, w.im]);
    }
    Rendered::table(&table, cli.format)
}

/// Nonzero reals `±10^s`, `s` equispaced in `[-3, 3]`.
fn nunokawa_grid() -> Vec<f64> {
    let n = 100_000;
    (0..n)
        .flat_map(|k| {
            let a = 10f64.powf(-3.0 + 6.0 * k as f64 / (n - 1) as f64);
            [a, -a]
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    claim: ClaimArg,
    lambda: Option<f64>,
    trials: u64,
    seed: u64,
    safety: f64,
    falsify: bool,
    grid_n: usize,
) -> Result<Rendered, CliError> {
    if falsify && claim != ClaimArg::Theorem2 {
        return Err(CliError::Usage("--falsify applies to --claim theorem2 only".into()));
    }
    if claim == ClaimArg::Nunokawa {
        let report = verify_nunokawa_bound(&nunokawa_grid())?;
        return Ok(Rendered { passed: report.passed, bytes: json_line(report.to_json()) });
    }
    let lambda = lambda.ok_or_else(|| CliError::Usage("--lambda is required for this claim".into()))?;
    let a = angle(lambda, cli.degrees)?;
    if falsify {
        // A violation found on the tested circle fails the run.
        let report = falsify_theorem2(a, trials, seed, safety)?;
        let s = serde_json::to_string_pretty(&report).expect("report serialization is infallible");
        return Ok(Rendered { passed: report.outcome != "found", bytes: json_line(s) });
    }
    let report = match claim {
        ClaimArg::Lemma1 => verify_lemma1(a, trials, seed)?,
        ClaimArg::Theorem1 => verify_theorem1(a, trials, seed, safety, false)?,
        ClaimArg::Corollary1 => verify_theorem1(a, trials, seed, safety, true)?,
        ClaimArg::Theorem2 => verify_theorem2(a, trials, seed, safety)?,
        ClaimArg::DifferentialIdentity => verify_differential_identity(a, grid_n)?,
        ClaimArg::Nunokawa => unreachable!(),
    };
    Ok(Rendered { passed: report.passed, bytes: json_line(report.to_json()) })
}

fn cmd_table(cli: &Cli, grid: &GridSpec, tol: f64) -> Result<Rendered, CliError> {
    let angles: Vec<Angle> = grid.values(cli.degrees).into_iter().map(Angle::new).collect::<Result<_, _>>()?;
    let rows = radius_table(&angles, tol)?;
    let mut table = Table::new(vec!["lambda", "r1", "r2"]);
    for r in rows {
        table.push(vec![r.lambda, r.r1, r.r2]);
    }
    Rendered::table(&table, cli.format)
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    match &cli.command {
        Command::Radius { kind, lambdas, tol } => cmd_radius(cli, *kind, lambdas, *tol),
        Command::Psi { lambda, r, grid_n, refine_tol } => cmd_psi(cli, *lambda, *r, *grid_n, *refine_tol),
        Command::Curve { kind, lambda, rho, n } => cmd_curve(cli, *kind, *lambda, *rho, *n),
        Command::Verify { claim, lambda, trials, seed, safety, falsify, grid_n } => {
            cmd_verify(cli, *claim, *lambda, *trials, *seed, *safety, *falsify, *grid_n)
        }
        Command::Table { lambda_grid, tol } => cmd_table(cli, lambda_grid, *tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let rendered = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&rendered.bytes, cli.output.as_deref()) {
        eprintln!("error: {}", CliError::Io(e));
        return ExitCode::from(2);
    }
    if rendered.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
