//! `mdrkit`: decide, construct, verify and compare monic determinantal
//! representations of quadratic polynomials.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error,
//! 3 verification failure.

mod input;
mod render;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mdrkit::construct::{self, DecisionReport, HermitianPencil, Size2Data};
use mdrkit::equivalence::{are_equivalent, EquivalenceKind};
use mdrkit::quadform::QuadraticPolynomial;
use mdrkit::verify::{cone_check, verify_determinant_seeded, VerifyReport};
use mdrkit::DEFAULT_TOL;
use serde_json::{json, Value};

const NEGATIVE: u8 = 1;
const INPUT: u8 = 2;
const MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "mdrkit", version, about = "Monic determinantal representations of quadratics")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Relative tolerance for rank and sign decisions
    #[arg(long, global = true, env = "MDRKIT_TOL", default_value_t = DEFAULT_TOL, value_parser = positive)]
    tol: f64,
    /// Random points used to rule out terms of degree 3 and up
    #[arg(long, global = true, default_value_t = 64, value_parser = at_least_one)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Clone)]
struct PolyArgs {
    /// Polynomial such as "1 + 2*x1 - x1^2 - 3*x1*x2"
    #[arg(short = 'f', long = "poly", conflicts_with = "poly_file")]
    poly: Option<String>,
    /// File holding a polynomial as text or as {"n", "A", "b", "c"} JSON
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// Number of variables (default: largest index used)
    #[arg(long)]
    nvars: Option<usize>,
}

impl PolyArgs {
    fn load(&self) -> Result<QuadraticPolynomial, CliError> {
        self.load_with(self.nvars)
    }

    fn load_with(&self, nvars: Option<usize>) -> Result<QuadraticPolynomial, CliError> {
        input::load_polynomial(self.poly.as_deref(), self.poly_file.as_deref(), nvars)
    }

    /// Without `--nvars`, pads the polynomial to the pencil's variable count.
    fn load_for(&self, p: &HermitianPencil) -> Result<QuadraticPolynomial, CliError> {
        if self.nvars.is_some() {
            return self.load();
        }
        let f = self.load_with(None)?;
        if f.n() > p.n() {
            return Err(mdrkit::Error::DimensionMismatch { expected: p.n(), found: f.n() }.into());
        }
        if f.n() < p.n() {
            return self.load_with(Some(p.n()));
        }
        Ok(f)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide which representations exist
    Decide {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Build a pencil and print it as JSON
    Construct {
        #[command(flatten)]
        poly: PolyArgs,
        /// auto, size2, diagonal, nsd, compress or compress=(1,2),(3,4)
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Row pairing for compress mode, e.g. "(1,2),(3,4)"
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Check that a pencil represents a polynomial
    Verify {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        pencil: PathBuf,
    },
    /// Compare two size-2 pencils up to unitary equivalence
    Equiv {
        /// Exactly two pencil files
        #[arg(long = "pencil", required = true, num_args = 1)]
        pencils: Vec<PathBuf>,
    },
    /// Look for a cone inside the spectrahedron of a pencil
    Cone {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        pencil: PathBuf,
    },
    /// Run decide (or verify, for "poly ; pencil.json" lines) on each line of a file
    Batch { file: PathBuf },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn at_least_one(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("expected an integer >= 1, got {s:?}")),
    }
}

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: INPUT, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<mdrkit::Error> for CliError {
    fn from(e: mdrkit::Error) -> Self {
        use mdrkit::Error::*;
        let code = match &e {
            NoSize2Representation(_) | NoDiagonalRepresentation { .. } | ANotNsd => NEGATIVE,
            NumericalFailure(_) | NotPsd { .. } | WitnessCheckFailed(_) | GramMismatch { .. }
            | VerificationMismatch => MISMATCH,
            _ => INPUT,
        };
        CliError { code, message: e.to_string() }
    }
}

enum Mode {
    Auto,
    Size2,
    Diagonal,
    Nsd,
    Compress(Vec<(usize, usize)>),
}

fn parse_mode(mode: &str, pairs: Option<&str>) -> Result<Mode, CliError> {
    let m = match mode {
        "auto" => Mode::Auto,
        "size2" => Mode::Size2,
        "diagonal" => Mode::Diagonal,
        "nsd" => Mode::Nsd,
        "compress" => {
            let text = pairs.ok_or_else(|| CliError::input("compress mode needs --pairs"))?;
            return Ok(Mode::Compress(input::parse_pairs(text)?));
        }
        other => match other.strip_prefix("compress=") {
            Some(text) if pairs.is_none() => return Ok(Mode::Compress(input::parse_pairs(text)?)),
            Some(_) => return Err(CliError::input("pairing given both in --mode and --pairs")),
            None => return Err(CliError::input(format!("unknown mode {other:?}"))),
        },
    };
    if pairs.is_some() {
        return Err(CliError::input("--pairs only applies to compress mode"));
    }
    Ok(m)
}

fn emit(opts: &Opts, text: String, value: Value) {
    if opts.json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn check(f: &QuadraticPolynomial, p: &HermitianPencil, opts: &Opts) -> Result<VerifyReport, CliError> {
    Ok(verify_determinant_seeded(f, p, opts.tol, opts.samples, opts.seed)?)
}

fn cmd_decide(poly: &PolyArgs, opts: &Opts) -> Result<u8, CliError> {
    let f = poly.load()?;
    let report = construct::decide(&f, opts.tol)?;
    emit(opts, render::decision(&report), json!(report));
    Ok(if report.verdict.has_representation() { 0 } else { NEGATIVE })
}

fn infeasible(report: &DecisionReport, why: &str, opts: &Opts) -> u8 {
    eprintln!("error: {why}");
    emit(opts, render::decision(report), json!(report));
    NEGATIVE
}

fn cmd_construct(poly: &PolyArgs, mode: &str, pairs: Option<&str>, opts: &Opts) -> Result<u8, CliError> {
    let mode = parse_mode(mode, pairs)?;
    let f = poly.load()?;
    let report = construct::decide(&f, opts.tol)?;
    let tol = opts.tol;
    let pencil = match mode {
        Mode::Auto if report.verdict.has_size2() => construct::construct_size2(&f, tol)?.pencil(),
        Mode::Auto if report.a_is_nsd => {
            let nc = construct::construct_nsd(&f, tol)?;
            let r = nc.c.nrows();
            let pairing: Vec<_> = (1..r).step_by(2).map(|p| (p, p + 1)).collect();
            construct::compress(&nc, &pairing)?
        }
        Mode::Auto => return Ok(infeasible(&report, "no monic determinantal representation exists", opts)),
        Mode::Size2 if !report.verdict.has_size2() => {
            return Ok(infeasible(&report, "no size-2 representation exists", opts))
        }
        Mode::Size2 => construct::construct_size2(&f, tol)?.pencil(),
        Mode::Diagonal if !report.diagonal_possible => {
            return Ok(infeasible(&report, "no diagonal representation exists", opts))
        }
        Mode::Diagonal => construct::construct_diagonal(&f, tol)?.pencil(),
        Mode::Nsd | Mode::Compress(_) if !report.a_is_nsd => {
            return Ok(infeasible(&report, "quadratic part is not negative semidefinite", opts))
        }
        Mode::Nsd => construct::construct_nsd(&f, tol)?.pencil,
        Mode::Compress(pairing) => construct::compress(&construct::construct_nsd(&f, tol)?, &pairing)?,
    };
    let verified = check(&f, &pencil, opts)?;
    if !verified.ok {
        eprintln!("error: constructed pencil failed its self-check\n{}", render::verify(&verified));
        return Ok(MISMATCH);
    }
    let json = pencil.to_json();
    if opts.json {
        println!("{}", serde_json::to_string(&json).expect("pencil serializes"));
    } else {
        println!("{}", serde_json::to_string_pretty(&json).expect("pencil serializes"));
    }
    Ok(0)
}

fn verify_outcome(f: &QuadraticPolynomial, p: &HermitianPencil, opts: &Opts) -> Result<(u8, VerifyReport), CliError> {
    let report = check(f, p, opts)?;
    Ok((if report.ok { 0 } else { MISMATCH }, report))
}

fn cmd_verify(poly: &PolyArgs, pencil: &Path, opts: &Opts) -> Result<u8, CliError> {
    let p = input::load_pencil(pencil)?;
    let f = poly.load_for(&p)?;
    let (code, report) = verify_outcome(&f, &p, opts)?;
    emit(opts, render::verify(&report), json!(report));
    Ok(code)
}

fn cmd_equiv(pencils: &[PathBuf], opts: &Opts) -> Result<u8, CliError> {
    let [a, b] = pencils else {
        return Err(CliError::input(format!("equiv takes exactly two --pencil files, got {}", pencils.len())));
    };
    let p1 = Size2Data::from_pencil(&input::load_pencil(a)?)?;
    let p2 = Size2Data::from_pencil(&input::load_pencil(b)?)?;
    let verdict = are_equivalent(&p1, &p2, opts.tol)?;
    emit(opts, render::equivalence(&verdict), render::equivalence_json(&verdict));
    Ok(match verdict.kind {
        EquivalenceKind::Equivalent => 0,
        EquivalenceKind::NotEquivalent => NEGATIVE,
        EquivalenceKind::DifferentPolynomial => INPUT,
    })
}

fn cmd_cone(poly: &PolyArgs, pencil: &Path, opts: &Opts) -> Result<u8, CliError> {
    let p = input::load_pencil(pencil)?;
    let f = poly.load_for(&p)?;
    let (code, report) = verify_outcome(&f, &p, opts)?;
    if code != 0 {
        eprintln!("error: pencil does not represent the polynomial\n{}", render::verify(&report));
        return Ok(code);
    }
    let witness = cone_check(&f, &p, opts.tol)?;
    emit(opts, render::cone(witness.as_ref()), render::cone_json(witness.as_ref()));
    Ok(0)
}

/// One batch line: `poly` runs decide, `poly ; pencil.json` runs verify.
/// Pencil paths are relative to the batch file.
fn batch_entry(line: &str, dir: &Path, opts: &Opts) -> Result<(u8, String, Value), CliError> {
    let (poly, pencil) = match line.split_once(';') {
        Some((poly, pencil)) => (poly.trim(), Some(dir.join(pencil.trim()))),
        None => (line, None),
    };
    let args = PolyArgs { poly: Some(poly.to_string()), poly_file: None, nvars: None };
    match pencil {
        None => {
            let report = construct::decide(&args.load()?, opts.tol)?;
            let code = if report.verdict.has_representation() { 0 } else { NEGATIVE };
            Ok((code, format!("{:?}", report.verdict), json!(report)))
        }
        Some(path) => {
            let p = input::load_pencil(&path)?;
            let (code, report) = verify_outcome(&args.load_for(&p)?, &p, opts)?;
            let summary = match report.failing_monomial {
                Some(m) => format!("mismatch at {m}"),
                None if report.ok => "ok".to_string(),
                None => "mismatch".to_string(),
            };
            Ok((code, summary, json!(report)))
        }
    }
}

fn cmd_batch(file: &Path, opts: &Opts) -> Result<u8, CliError> {
    let text = fs::read_to_string(file).map_err(|e| CliError::input(format!("{}: {e}", file.display())))?;
    let dir = file.parent().unwrap_or(Path::new("."));
    let mut worst = 0;
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let (code, summary, value) = match batch_entry(line, dir, opts) {
            Ok((code, summary, value)) => (code, summary, json!({ "line": lineno, "exit": code, "report": value })),
            Err(e) => (e.code, format!("error: {e}"), json!({ "line": lineno, "exit": e.code, "error": e.message })),
        };
        worst = worst.max(code);
        if opts.json {
            entries.push(value);
        } else {
            println!("{lineno}: [{code}] {summary}");
        }
    }
    if opts.json {
        println!("{}", Value::Array(entries));
    }
    Ok(worst)
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let opts = &cli.opts;
    match &cli.cmd {
        Command::Decide { poly } => cmd_decide(poly, opts),
        Command::Construct { poly, mode, pairs } => cmd_construct(poly, mode, pairs.as_deref(), opts),
        Command::Verify { poly, pencil } => cmd_verify(poly, pencil, opts),
        Command::Equiv { pencils } => cmd_equiv(pencils, opts),
        Command::Cone { poly, pencil } => cmd_cone(poly, pencil, opts),
        Command::Batch { file } => cmd_batch(file, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
