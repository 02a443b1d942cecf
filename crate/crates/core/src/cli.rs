//! Command-line front end. `main.rs` only calls [`run`].
//!
//! Exit codes: 0 success, 2 usage or input-format errors, 3 numeric failures,
//! 4 sample tables missing required abscissas.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::apoly::AEvaluator;
use crate::error::Error;
use crate::expr::parse_expr;
use crate::io::{write_csv, ExpansionFile, Generator, SampleTable};
use crate::operators::{
    fit, omega_hat, omega_weak, w_discrete_from_values, w_hat_from_values, Expansion, FitOptions,
    Operator,
};
use crate::quadrature::{gauss_rule, QuadOptions};
use crate::roots::linspace;
use crate::structured::{build_structured, wavelet_subset};

#[derive(Debug, Parser)]
#[command(name = "altapprox", version, about = "Alternative orthogonal polynomial approximation on [0, 1]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gauss nodes and weights on [0, 1], with both endpoints listed at weight 0.
    Nodes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a basis family on a grid.
    Basis {
        #[arg(long, value_enum, ignore_case = true)]
        system: System,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "0:1:101")]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit an expression or a sample table and write the expansion.
    Fit(FitArgs),
    /// Evaluate a saved expansion on a grid.
    Eval {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "0:1:101")]
        grid: Grid,
        /// Add a derivative column.
        #[arg(long)]
        derivative: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare an expression with its weak and projection fits beyond [0, 1], or
    /// evaluate a saved expansion there.
    Extrapolate {
        /// Saved expansion (alternative to --expr).
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true, default_value = "-1.5:2.5:401")]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the antisymmetric Λ members (wavelets) for degree n.
    Wavelet {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "0:1:201")]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, value_enum, default_value_t = OperatorArg::Weak)]
    pub operator: OperatorArg,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "samples", required_unless_present = "samples")]
    pub expr: Option<String>,
    /// CSV with header "x,f" covering 0, 1 and the Gauss nodes (discrete operators only).
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Grid for --format csv.
    #[arg(long, allow_hyphen_values = true, default_value = "0:1:101")]
    pub grid: Grid,
    /// Choose n of the parity opposite to the symmetry of f about 1/2.
    #[arg(long)]
    pub auto_parity: bool,
    /// Spectral operator: compute b from the c-coefficients instead of f'.
    #[arg(long)]
    pub b_from_c: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    A,
    B,
    S,
    Lambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    Spectral,
    Weak,
    Projection,
    W,
    What,
}

impl From<OperatorArg> for Operator {
    fn from(o: OperatorArg) -> Self {
        match o {
            OperatorArg::Spectral => Operator::Spectral,
            OperatorArg::Weak => Operator::Weak,
            OperatorArg::Projection => Operator::Projection,
            OperatorArg::W => Operator::W,
            OperatorArg::What => Operator::What,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `start:stop:count`, both ends included.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(format!("grid must look like start:stop:count, got {s:?}"));
        };
        let start: f64 = a.trim().parse().map_err(|_| format!("bad grid start {a:?}"))?;
        let stop: f64 = b.trim().parse().map_err(|_| format!("bad grid stop {b:?}"))?;
        let count: usize = c.trim().parse().map_err(|_| format!("bad grid count {c:?}"))?;
        if !(start.is_finite() && stop.is_finite()) || count == 0 {
            return Err(format!("grid needs finite ends and a positive count, got {s:?}"));
        }
        Ok(Grid { start, stop, count })
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                Error::SampleMismatch { .. } => 4,
                Error::QuadratureNotConverged { .. }
                | Error::Numeric(_)
                | Error::RootCount { .. }
                | Error::Internal(_) => 3,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<crate::expr::ParseError> for CliError {
    fn from(e: crate::expr::ParseError) -> Self {
        CliError::Lib(e.into())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        Err(usage("--n must be at least 1"))
    } else {
        Ok(())
    }
}

fn cmd_nodes(n: usize, out: Option<&Path>) -> Result<(), CliError> {
    check_n(n)?;
    let rule = gauss_rule(n)?;
    let mut rows = vec![vec![0.0, 0.0]];
    rows.extend(rule.nodes().iter().zip(rule.weights()).map(|(&x, &w)| vec![x, w]));
    rows.push(vec![1.0, 0.0]);
    emit(out, &write_csv(&["x", "w"], &rows))
}

fn cmd_basis(system: System, n: usize, grid: &Grid, out: Option<&Path>) -> Result<(), CliError> {
    check_n(n)?;
    let xs = grid.points();
    let (header, rows): (Vec<String>, Vec<Vec<f64>>) = match system {
        System::A | System::B => {
            if n > crate::apoly::MAX_DEGREE {
                return Err(usage(format!("--n must be at most {}", crate::apoly::MAX_DEGREE)));
            }
            let ev = AEvaluator::new(n);
            let name = if system == System::A { "A" } else { "B" };
            let header = (0..=n).map(|k| format!("{name}_{n}_{k}")).collect();
            let rows = xs
                .iter()
                .map(|&x| {
                    let v = ev.at(x);
                    let mut row = vec![x];
                    row.extend((0..=n).map(|k| if system == System::A { v.a(k) } else { v.b(k) }));
                    row
                })
                .collect();
            (header, rows)
        }
        System::S => {
            let s = build_structured(n)?;
            let header = (0..=n).map(|k| format!("S_{n}_{k}")).collect();
            let rows = xs
                .iter()
                .map(|&x| {
                    let mut row = vec![x];
                    row.extend((0..=n).map(|k| s.eval(k, x)));
                    row
                })
                .collect();
            (header, rows)
        }
        System::Lambda => {
            if n < 2 {
                return Err(usage("Λ members need --n >= 2"));
            }
            let s = build_structured(n)?;
            let lambdas: Vec<_> = (2..=n).map(|k| s.lambda(k)).collect::<Result<_, _>>()?;
            let header = (2..=n).map(|k| format!("Lambda_{n}_{k}")).collect();
            let rows = xs
                .iter()
                .map(|&x| {
                    let mut row = vec![x];
                    row.extend(lambdas.iter().map(|l| l.eval(x)));
                    row
                })
                .collect();
            (header, rows)
        }
    };
    let mut cols = vec!["x"];
    cols.extend(header.iter().map(String::as_str));
    emit(out, &write_csv(&cols, &rows))
}

fn quad_options() -> Result<QuadOptions, CliError> {
    QuadOptions::from_env().map_err(|e| usage(e.to_string()))
}

fn cmd_fit(args: &FitArgs) -> Result<(), CliError> {
    check_n(args.n)?;
    let op: Operator = args.operator.into();
    let quad = quad_options()?;
    let (expansion, source) = match (&args.expr, &args.samples) {
        (Some(text), None) => {
            let f = parse_expr(text)?.to_func_spec(text.trim());
            let opts = FitOptions {
                quad: quad.clone(),
                b_from_c: args.b_from_c,
                auto_parity: args.auto_parity,
            };
            (fit(op, &f, args.n, &opts)?, format!("expr: {}", text.trim()))
        }
        (None, Some(path)) => {
            if !op.is_discrete() {
                return Err(usage(format!(
                    "--samples works only with the discrete operators (w, what), not {op}"
                )));
            }
            if args.auto_parity {
                return Err(usage("--auto-parity needs --expr"));
            }
            let table = SampleTable::parse_csv(&read(path)?)?;
            let rule = gauss_rule(args.n)?;
            let (f0, vals, f1) = table.discrete_input(&rule)?;
            let e = match op {
                Operator::W => w_discrete_from_values(f0, &vals, f1, &rule)?,
                _ => w_hat_from_values(f0, &vals, &rule)?,
            };
            (e, format!("samples: {}", path.display()))
        }
        _ => return Err(usage("give exactly one of --expr and --samples")),
    };
    match args.format {
        Format::Json => {
            let generator = Generator {
                operator: op.name().to_string(),
                quad_tol: quad.tol,
                relaxed_tol: quad.relaxed_tol,
                source: Some(source),
                parity: expansion.parity().cloned(),
            };
            let file = ExpansionFile::from_expansion(&expansion, generator)?;
            emit(args.out.as_deref(), &file.to_json())
        }
        Format::Csv => emit(args.out.as_deref(), &tabulate(&expansion, &args.grid, true)),
    }
}

fn tabulate(e: &Expansion, grid: &Grid, derivative: bool) -> String {
    let rows: Vec<Vec<f64>> = grid
        .points()
        .into_iter()
        .map(|x| {
            let mut row = vec![x, e.value(x)];
            if derivative {
                row.push(e.derivative(x));
            }
            row
        })
        .collect();
    let header: &[&str] = if derivative { &["x", "value", "derivative"] } else { &["x", "value"] };
    write_csv(header, &rows)
}

fn load(path: &Path) -> Result<Expansion, CliError> {
    Ok(ExpansionFile::from_json(&read(path)?)?.to_expansion()?)
}

fn cmd_eval(file: &Path, grid: &Grid, derivative: bool, out: Option<&Path>) -> Result<(), CliError> {
    emit(out, &tabulate(&load(file)?, grid, derivative))
}

fn cmd_extrapolate(
    file: Option<&Path>,
    expr: Option<&str>,
    n: Option<usize>,
    grid: &Grid,
    out: Option<&Path>,
) -> Result<(), CliError> {
    match (file, expr) {
        (Some(path), None) => {
            if n.is_some() {
                return Err(usage("--n applies only with --expr"));
            }
            emit(out, &tabulate(&load(path)?, grid, false))
        }
        (None, Some(text)) => {
            let n = n.ok_or_else(|| usage("--expr needs --n"))?;
            check_n(n)?;
            let f = parse_expr(text)?.to_func_spec(text.trim());
            let quad = quad_options()?;
            let hat = omega_hat(&f, n, &quad)?;
            let omega = omega_weak(&f, n, &quad)?;
            let rows: Vec<Vec<f64>> = grid
                .points()
                .into_iter()
                .map(|x| vec![x, f.eval(x), hat.value(x), omega.value(x)])
                .collect();
            emit(out, &write_csv(&["x", "f", "omega_hat", "omega"], &rows))
        }
        _ => Err(usage("give either an expansion file or --expr with --n")),
    }
}

fn cmd_wavelet(n: usize, grid: &Grid, out: Option<&Path>) -> Result<(), CliError> {
    if n < 3 {
        return Err(usage("wavelets need --n >= 3"));
    }
    let s = build_structured(n)?;
    let members = wavelet_subset(&s);
    if members.is_empty() {
        eprintln!("note: no antisymmetric members for n = {n}; use an odd n");
    }
    let lambdas: Vec<_> = members.iter().map(|&(_, k)| s.lambda(k)).collect::<Result<_, _>>()?;
    let names: Vec<String> = members.iter().map(|(n, k)| format!("Lambda_{n}_{k}")).collect();
    let mut header = vec!["x"];
    header.extend(names.iter().map(String::as_str));
    let rows: Vec<Vec<f64>> = grid
        .points()
        .into_iter()
        .map(|x| {
            let mut row = vec![x];
            row.extend(lambdas.iter().map(|l| l.eval(x)));
            row
        })
        .collect();
    emit(out, &write_csv(&header, &rows))
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Nodes { n, out } => cmd_nodes(*n, out.as_deref()),
        Command::Basis { system, n, grid, out } => cmd_basis(*system, *n, grid, out.as_deref()),
        Command::Fit(args) => cmd_fit(args),
        Command::Eval { file, grid, derivative, out } => {
            cmd_eval(file, grid, *derivative, out.as_deref())
        }
        Command::Extrapolate { file, expr, n, grid, out } => {
            cmd_extrapolate(file.as_deref(), expr.as_deref(), *n, grid, out.as_deref())
        }
        Command::Wavelet { n, grid, out } => cmd_wavelet(*n, grid, out.as_deref()),
    }
}

/// Parses the process arguments, runs the command, and maps failures to exit codes.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(
            "-1.5:2.5:401".parse::<Grid>().unwrap(),
            Grid { start: -1.5, stop: 2.5, count: 401 }
        );
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("a:1:3".parse::<Grid>().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(usage("x").exit_code(), 2);
        assert_eq!(CliError::Lib(Error::SampleMismatch { missing: vec![0.5] }).exit_code(), 4);
        assert_eq!(CliError::Lib(Error::Numeric("x".into())).exit_code(), 3);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
