use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde::Serialize;

use simplex_ortho::error::Error;
use simplex_ortho::exact::{parse_rational, parse_rational_list, to_f64, Rational};
use simplex_ortho::hahn::HahnFamily;
use simplex_ortho::kraw::KrawFamily;
use simplex_ortho::lattice::Composition;
use simplex_ortho::params::{Kappa, Rho};
use simplex_ortho::simplex::{homogeneous_point, SimplexJacobi};
use simplex_ortho::table::KernelTable;
use simplex_ortho::verify::{self, Suite, VerifyConfig};

/// Exact evaluation of simplex Jacobi, Hahn and Krawtchouk polynomials and kernels.
#[derive(Parser)]
#[command(name = "simplex-ortho", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one polynomial at one point.
    Eval(EvalArgs),
    /// Reproducing kernel table on the grid of level N.
    Kernel(KernelArgs),
    /// Poisson kernel table, column or value.
    Poisson(PoissonArgs),
    /// Run identity suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Jacobi,
    Hahn,
    Kraw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Discrete {
    Hahn,
    Kraw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Closed,
    Sum,
    Intermediate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct FamilyParams {
    /// Hahn or Jacobi parameter, d+1 rationals such as `0,1/2,1`.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    kappa: String,
    /// Krawtchouk parameter, d positive rationals with sum below 1.
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    rho: String,
    /// Grid level.
    #[arg(long = "N", default_value_t = 2)]
    level: u32,
}

#[derive(Args)]
struct EvalArgs {
    family: Family,
    #[command(flatten)]
    params: FamilyParams,
    /// Degree index of an orthogonal polynomial, d entries.
    #[arg(long, conflicts_with = "alpha")]
    nu: Option<String>,
    /// Exponent of a monic Jacobi polynomial R_alpha in X = (x, 1-|x|), d+1 entries.
    #[arg(long)]
    alpha: Option<String>,
    /// Grid point, d+1 nonnegative integers summing to N.
    #[arg(long)]
    x: Option<String>,
    /// Simplex point for Jacobi polynomials, d rationals.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelArgs {
    family: Discrete,
    #[command(flatten)]
    params: FamilyParams,
    /// Kernel degree.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "closed")]
    form: Form,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PoissonArgs {
    family: Discrete,
    #[command(flatten)]
    params: FamilyParams,
    /// Rational in [0, 1].
    #[arg(long, allow_hyphen_values = true)]
    r: String,
    /// First point; with --y prints a single value.
    #[arg(long)]
    x: Option<String>,
    /// Second point, or `0` for the origin; alone prints one column.
    #[arg(long)]
    y: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Dimension to sweep; all of 1 and 2 when omitted.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long = "N-max", default_value_t = 3)]
    n_max: u32,
    #[arg(long = "kappa-grid", allow_hyphen_values = true)]
    kappa_grid: Option<String>,
    #[arg(long = "rho-grid", allow_hyphen_values = true)]
    rho_grid: Option<String>,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures that end the process.
enum Fail {
    Usage(String),
    Violation,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Outcome = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Kernel(a) => kernel(a),
        Command::Poisson(a) => poisson(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Violation) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SIMPLEX_ORTHO_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("SIMPLEX_ORTHO_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn parse_indices(s: &str) -> Result<Vec<u32>, Fail> {
    s.split([',', '|'])
        .map(|t| t.trim().parse::<u32>().map_err(|_| Fail::Usage(format!("bad index {t:?} in {s:?}"))))
        .collect()
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Fail> {
    v.as_deref().ok_or_else(|| Fail::Usage(format!("{flag} is required")))
}

fn exact_line(v: &Rational) -> String {
    format!("{v}\t{}", to_f64(v))
}

fn eval(a: EvalArgs) -> Outcome {
    let value = match a.family {
        Family::Jacobi => {
            let fam = SimplexJacobi::new(Kappa::parse(&a.params.kappa)?);
            let point = parse_rational_list(required(&a.point, "--point")?)?;
            match (&a.nu, &a.alpha) {
                (_, Some(alpha)) => fam.r_monic(&parse_indices(alpha)?)?.eval(&homogeneous_point(&point))?,
                (Some(nu), None) => fam.p_eval(&parse_indices(nu)?, &point)?,
                (None, None) => return Err(Fail::Usage("--nu or --alpha is required".into())),
            }
        }
        Family::Hahn => {
            let fam = HahnFamily::new(Kappa::parse(&a.params.kappa)?, a.params.level)?;
            let nu = parse_indices(required(&a.nu, "--nu")?)?;
            fam.hahn_h(&nu, &parse_indices(required(&a.x, "--x")?)?)?
        }
        Family::Kraw => {
            let fam = KrawFamily::new(Rho::parse(&a.params.rho)?, a.params.level);
            let nu = parse_indices(required(&a.nu, "--nu")?)?;
            fam.kraw_k(&nu, &parse_indices(required(&a.x, "--x")?)?)?
        }
    };
    println!("{}", exact_line(&value));
    Ok(())
}

fn emit(text: &str, out: &Option<PathBuf>) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_table(t: &KernelTable, o: &OutputArgs) -> Outcome {
    let text = match o.format {
        Format::Csv => t.to_csv()?,
        Format::Json => t.to_json()? + "\n",
    };
    emit(&text, &o.out)
}

fn kernel(a: KernelArgs) -> Outcome {
    let p = &a.params;
    let table = match (a.family, a.form) {
        (Discrete::Hahn, form) => {
            let fam = HahnFamily::new(Kappa::parse(&p.kappa)?, p.level)?;
            match form {
                Form::Closed => fam.kernel_closed_table(a.n)?,
                Form::Sum => fam.kernel_sum_table(a.n)?,
                Form::Intermediate => fam.kernel_intermediate_table(a.n)?,
            }
        }
        (Discrete::Kraw, Form::Intermediate) => {
            return Err(Fail::Usage("the intermediate form exists only for hahn".into()))
        }
        (Discrete::Kraw, form) => {
            let fam = KrawFamily::new(Rho::parse(&p.rho)?, p.level);
            match form {
                Form::Sum => fam.kernel_sum_table(a.n)?,
                _ => fam.kernel_closed_table(a.n)?,
            }
        }
    };
    emit_table(&table, &a.output)
}

fn parse_point(s: &str, parts: usize, level: u32) -> Result<Composition, Fail> {
    if s.trim() == "0" {
        return Ok(Composition::origin(parts, level));
    }
    let c = Composition::with_level(parse_indices(s)?, level)?;
    if c.parts() != parts {
        return Err(Error::LengthMismatch { expected: parts, found: c.parts() }.into());
    }
    Ok(c)
}

#[derive(Serialize)]
struct ColumnCell {
    x: String,
    value: String,
    approx: f64,
}

#[derive(Serialize)]
struct Column {
    y: String,
    r: String,
    cells: Vec<ColumnCell>,
}

type PointKernel = Box<dyn Fn(&[u32], &[u32]) -> Result<Rational, Error>>;

fn poisson(a: PoissonArgs) -> Outcome {
    let r = parse_rational(&a.r)?;
    if r < Rational::zero() || r > Rational::one() {
        return Err(Fail::Usage(format!("r must lie in [0, 1], got {r}")));
    }
    let p = &a.params;
    let (grid, parts, phi): (Vec<Composition>, usize, PointKernel) = match a.family {
        Discrete::Hahn => {
            let fam = HahnFamily::new(Kappa::parse(&p.kappa)?, p.level)?;
            let (grid, parts) = (fam.grid(), fam.d() + 1);
            let r = r.clone();
            (grid, parts, Box::new(move |x, y| fam.poisson(&r, x, y)))
        }
        Discrete::Kraw => {
            let fam = KrawFamily::new(Rho::parse(&p.rho)?, p.level);
            let (grid, parts) = (fam.grid(), fam.d() + 1);
            let r = r.clone();
            (grid, parts, Box::new(move |x, y| fam.poisson(&r, x, y)))
        }
    };
    match (&a.x, &a.y) {
        (Some(x), Some(y)) => {
            let x = parse_point(x, parts, p.level)?;
            let y = parse_point(y, parts, p.level)?;
            println!("{}", exact_line(&phi(x.entries(), y.entries())?));
            Ok(())
        }
        (Some(_), None) => Err(Fail::Usage("--x needs --y".into())),
        (None, Some(y)) => {
            let y = parse_point(y, parts, p.level)?;
            let mut cells = Vec::with_capacity(grid.len());
            for x in &grid {
                let v = phi(x.entries(), y.entries())?;
                cells.push(ColumnCell { x: x.label(), value: v.to_string(), approx: to_f64(&v) });
            }
            let col = Column { y: y.label(), r: r.to_string(), cells };
            let text = match a.output.format {
                Format::Csv => column_csv(&col)?,
                Format::Json => {
                    serde_json::to_string_pretty(&col).map_err(|e| Fail::Usage(e.to_string()))? + "\n"
                }
            };
            emit(&text, &a.output.out)
        }
        (None, None) => {
            let table = KernelTable::build(p.level, None, grid, true, |x, y| phi(x.entries(), y.entries()))?;
            emit_table(&table, &a.output)
        }
    }
}

fn column_csv(col: &Column) -> Result<String, Fail> {
    let io = |e: csv::Error| Fail::Usage(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["", col.y.as_str()]).map_err(io)?;
    for c in &col.cells {
        w.write_record([c.x.as_str(), c.value.as_str()]).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Fail::Usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Fail::Usage(e.to_string()))
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let mut cfg = VerifyConfig { d: a.d, n_max: a.n_max, seed: a.seed, ..VerifyConfig::default() };
    if let Some(d) = a.d {
        if !(1..=3).contains(&d) {
            return Err(Fail::Usage(format!("--d must be 1, 2 or 3, got {d}")));
        }
    }
    if let Some(g) = &a.kappa_grid {
        cfg.kappa_grid = parse_rational_list(g)?;
        for v in &cfg.kappa_grid {
            Kappa::constant(1, v.clone())?;
        }
    }
    if let Some(g) = &a.rho_grid {
        cfg.rho_grid = parse_rational_list(g)?;
        for v in &cfg.rho_grid {
            Rho::new(vec![v.clone()])?;
        }
    }
    let start = Instant::now();
    let report = verify::run(a.suite, &cfg);
    let text = serde_json::to_string_pretty(&report).map_err(|e| Fail::Usage(e.to_string()))? + "\n";
    emit(&text, &a.out)?;
    let cases: usize = report.identities.iter().map(|r| r.cases).sum();
    eprintln!(
        "{} identities, {cases} cases, {:.2}s: {}",
        report.identities.len(),
        start.elapsed().as_secs_f64(),
        if report.passed { "pass" } else { "FAIL" }
    );
    match report.first_failure() {
        None => Ok(()),
        Some((id, f)) => {
            eprintln!("first failure: {} / {}", id.suite, id.identity_tag);
            eprintln!("  params: {}", f.params);
            eprintln!("  lhs: {}", f.lhs);
            eprintln!("  rhs: {}", f.rhs);
            Err(Fail::Violation)
        }
    }
}
