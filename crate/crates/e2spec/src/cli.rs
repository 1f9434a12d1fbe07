//! Command-line surface: every library module as a reproducible, scriptable
//! command. Output is byte-identical for identical invocations — fixed row
//! ordering and floats rounded to 9 significant digits before printing.
//! `E2SPEC_SEED` is reserved; nothing here is randomized.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exceptional::{discriminant_in_zhat, exceptional_points, ExceptionalError};
use crate::mathieu::{mathieu_ep, optimal_lambda_study, MathieuError};
use crate::model::{ModelError, ModelParams, Parity, Quantization};
use crate::monodromy::{trace_loop, LoopTrace, MonodromyError};
use crate::orthopoly::{
    measure_weights, moments_recurrence, moments_weights, norms_formula, norms_product,
    OrthopolyError,
};
use crate::polynomials::roots::NonConvergence;
use crate::polynomials::{format_exact, rational_to_f64, PolyError};
use crate::spectrum::{eigenvalues, schroedinger_residual, SpectrumError};

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

#[derive(Debug)]
enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::DegreeTooSmall { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<NonConvergence> for CliError {
    fn from(e: NonConvergence) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Model(m) => m.into(),
            SpectrumError::Roots(r) => r.into(),
            SpectrumError::ClosedFormUnavailable { .. } => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ExceptionalError> for CliError {
    fn from(e: ExceptionalError) -> Self {
        match e {
            ExceptionalError::Poly(p) => p.into(),
            ExceptionalError::Roots(r) => r.into(),
        }
    }
}

impl From<OrthopolyError> for CliError {
    fn from(e: OrthopolyError) -> Self {
        match e {
            OrthopolyError::Spectrum(s) => s.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<MathieuError> for CliError {
    fn from(e: MathieuError) -> Self {
        match e {
            MathieuError::TooFewLevels(_) => CliError::Validation(e.to_string()),
            MathieuError::NoRoot { .. } => CliError::Numerical(e.to_string()),
            MathieuError::Poly(p) => p.into(),
            MathieuError::Exceptional(x) => x.into(),
            MathieuError::Model(m) => m.into(),
        }
    }
}

impl From<MonodromyError> for CliError {
    fn from(e: MonodromyError) -> Self {
        match e {
            MonodromyError::InvalidRadius
            | MonodromyError::TooFewSteps(_)
            | MonodromyError::CircleThroughBranchPoint { .. } => {
                CliError::Validation(e.to_string())
            }
            MonodromyError::MatchingAmbiguous { .. } => CliError::Numerical(e.to_string()),
            MonodromyError::Model(m) => m.into(),
            MonodromyError::Poly(p) => p.into(),
            MonodromyError::Roots(r) => r.into(),
            MonodromyError::Exceptional(x) => x.into(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "e2spec",
    version,
    about = "Spectral toolkit for the three-parameter E2 quasi-exactly-solvable model",
    after_help = "All computations are deterministic; the E2SPEC_SEED variable is reserved."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl ParityArg {
    fn parity(self) -> Parity {
        match self {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
    fn name(self) -> &'static str {
        match self {
            ParityArg::Even => "even",
            ParityArg::Odd => "odd",
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quasi-exact energies of one block, optionally swept over real λ
    Spectrum {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        ntilde: u32,
        /// Dimensionless coupling ζ (decimal or p/q)
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        /// Real deformation parameter λ (decimal or p/q)
        #[arg(
            long,
            conflicts_with = "sweep",
            required_unless_present = "sweep",
            allow_hyphen_values = true
        )]
        lambda: Option<String>,
        /// Sweep λ over START:STOP:COUNT instead of a single value
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Max |Hψ − Eψ| over a θ grid for every block energy
    Residual {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        ntilde: u32,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Number of θ samples on [0, 2π)
        #[arg(long, default_value_t = 360)]
        grid: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact reduced discriminant of the block in ζ̂, with its content factor κ
    Disc {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        ntilde: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exceptional points: positive ζ̂² roots of the reduced discriminant
    Eps {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        ntilde: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the block energies around a circle in the complex λ plane
    Loop {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        ntilde: u32,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        /// Circle center λ̃, e.g. "1", "-0.5", "5.2562+9.9526i"
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long, allow_hyphen_values = true)]
        radius: f64,
        /// Samples per turn (≥ 64)
        #[arg(long, default_value_t = 256)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        turns: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Discrete measure of the block: nodes, weights and their sum
    Measure {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        ntilde: u32,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weak-orthogonality norms N_n, exact (product form ≡ closed form)
    Norms {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        ntilde: u32,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moments of the measure: exact recurrence vs weighted node sum
    Moments {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        ntilde: u32,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double-scaling study: g(n) = ζ₀N per level against the Mathieu EP
    Mathieu {
        #[arg(long, value_enum, default_value = "even")]
        parity: ParityArg,
        /// λ values to compare (repeat the flag or comma-separate)
        #[arg(
            long = "lambda",
            value_delimiter = ',',
            default_value = "1",
            allow_hyphen_values = true
        )]
        lambdas: Vec<f64>,
        #[arg(long, default_value_t = 5)]
        nmax: u32,
        /// Truncation level used for the reference Mathieu EP coupling
        #[arg(long, default_value_t = 12)]
        levels: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence of the truncated complex-Mathieu EP coupling g(L)
    MathieuLimit {
        #[arg(long, value_enum, default_value = "even")]
        parity: ParityArg,
        #[arg(long, default_value_t = 12)]
        levels: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn dispatch(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Spectrum {
            parity,
            ntilde,
            zeta,
            lambda,
            sweep,
            format,
            out,
        } => cmd_spectrum(parity, ntilde, &zeta, lambda.as_deref(), sweep.as_deref(), format, &out),
        Cmd::Residual {
            parity,
            ntilde,
            zeta,
            lambda,
            grid,
            format,
            out,
        } => cmd_residual(parity, ntilde, &zeta, &lambda, grid, format, &out),
        Cmd::Disc { parity, ntilde, out } => cmd_disc(parity, ntilde, &out),
        Cmd::Eps {
            parity,
            ntilde,
            format,
            out,
        } => cmd_eps(parity, ntilde, format, &out),
        Cmd::Loop {
            parity,
            ntilde,
            zeta,
            center,
            radius,
            steps,
            turns,
            out,
        } => cmd_loop(parity, ntilde, &zeta, &center, radius, steps, turns, &out),
        Cmd::Measure {
            parity,
            ntilde,
            zeta,
            lambda,
            format,
            out,
        } => cmd_measure(parity, ntilde, &zeta, &lambda, format, &out),
        Cmd::Norms {
            parity,
            ntilde,
            zeta,
            lambda,
            max_order,
            format,
            out,
        } => cmd_norms(parity, ntilde, &zeta, &lambda, max_order, format, &out),
        Cmd::Moments {
            parity,
            ntilde,
            zeta,
            lambda,
            max_order,
            format,
            out,
        } => cmd_moments(parity, ntilde, &zeta, &lambda, max_order, format, &out),
        Cmd::Mathieu {
            parity,
            lambdas,
            nmax,
            levels,
            format,
            out,
        } => cmd_mathieu(parity, &lambdas, nmax, levels, format, &out),
        Cmd::MathieuLimit {
            parity,
            levels,
            format,
            out,
        } => cmd_mathieu_limit(parity, levels, format, &out),
    }
}

// ---------------------------------------------------------------- parsing

fn quantization(parity: ParityArg, ntilde: u32) -> Result<Quantization, CliError> {
    Quantization::new(ntilde, parity.parity()).ok_or_else(|| {
        CliError::Validation(format!(
            "ntilde {ntilde} is below the minimum for the {} family (1 even, 2 odd)",
            parity.name()
        ))
    })
}

/// "0.25", "-3", "7/20" → exact rational plus its f64 image.
fn parse_exact(label: &str, s: &str) -> Result<(BigRational, f64), CliError> {
    let bad =
        || CliError::Validation(format!("cannot parse {label} '{s}' as a decimal or p/q rational"));
    let rat = if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| bad())?;
        let den: BigInt = q.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        BigRational::new(num, den)
    } else {
        let t = s.trim();
        let (sign, digits) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all = format!("{int_part}{frac_part}");
        if all.is_empty() || !all.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = all.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        BigRational::new(BigInt::from(sign) * num, den)
    };
    let f = rational_to_f64(&rat);
    Ok((rat, f))
}

fn parse_lambda_real(s: &str) -> Result<(BigRational, f64), CliError> {
    let (rat, f) = parse_exact("lambda", s)?;
    if rat == BigRational::from_integer(BigInt::from(-1)) {
        return Err(ModelError::LambdaIsMinusOne.into());
    }
    Ok((rat, f))
}

/// "1", "-0.5", "2i", "5.2562+9.9526i", "1-2i", "-i"
fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || {
        CliError::Validation(format!(
            "cannot parse '{s}' as a complex number (expected forms: 1.5, -2, 3+4i, -0.5i)"
        ))
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if !t.ends_with('i') {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    }
    let body = &t[..t.len() - 1];
    // look for the sign that splits re from im (skip a leading sign and any
    // exponent signs)
    let mut split = None;
    for (idx, c) in body.char_indices().skip(1) {
        if (c == '+' || c == '-') && !matches!(body.as_bytes()[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_sweep(s: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Validation(format!("cannot parse sweep '{s}' (expected START:STOP:COUNT)"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count < 2 {
        return Err(CliError::Validation("sweep COUNT must be at least 2".into()));
    }
    Ok((start, stop, count))
}

// ------------------------------------------------------------- formatting

/// Round to 9 significant digits; all printed floats pass through here.
fn round9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap()
}

fn fmt9(x: f64) -> String {
    let v = round9(x);
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    if (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        sci9(v)
    }
}

/// "1.20906360e-76" with trailing mantissa zeros trimmed.
fn sci9(v: f64) -> String {
    let s = format!("{v:.8e}");
    let (mant, exp) = s.split_once('e').unwrap();
    let mant = mant.trim_end_matches('0').trim_end_matches('.');
    format!("{mant}e{exp}")
}

fn jnum(x: f64) -> String {
    let v = round9(x);
    if !v.is_finite() {
        return "null".to_string();
    }
    if v == 0.0 {
        return "0.0".to_string();
    }
    let a = v.abs();
    if !(1e-4..1e15).contains(&a) {
        sci9(v)
    } else if v == v.trunc() {
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}

fn jcomplex(z: Complex64) -> String {
    format!("{{\"re\":{},\"im\":{}}}", jnum(z.re), jnum(z.im))
}

fn rat_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Non-trivial cycles in 1-indexed notation; "()" for the identity.
fn cycle_string(cycles: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for c in cycles {
        if c.len() < 2 {
            continue;
        }
        out.push('(');
        for (i, k) in c.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", k + 1);
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn emit(out: &Option<PathBuf>, content: &str, note: Option<&str>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, content).map_err(|e| {
                CliError::Validation(format!("cannot write {}: {e}", path.display()))
            })?;
            if let Some(n) = note {
                println!("{n}");
            }
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// ------------------------------------------------------------ subcommands

fn cmd_spectrum(
    parity: ParityArg,
    ntilde: u32,
    zeta: &str,
    lambda: Option<&str>,
    sweep: Option<&str>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let q = quantization(parity, ntilde)?;
    let (_, zf) = parse_exact("zeta", zeta)?;
    let content = if let Some(sw) = sweep {
        let (start, stop, count) = parse_sweep(sw)?;
        let mut rows = Vec::with_capacity(count);
        for i in 0..count {
            let l = start + (stop - start) * (i as f64) / ((count - 1) as f64);
            let spec = eigenvalues(q, zf, Complex64::new(l, 0.0))?;
            rows.push((l, spec.energies));
        }
        match format {
            Format::Json => {
                let items: Vec<String> = rows
                    .iter()
                    .map(|(l, es)| {
                        let energies: Vec<String> = es.iter().map(|e| jcomplex(*e)).collect();
                        format!(
                            "{{\"lambda\":{},\"energies\":[{}]}}",
                            jnum(*l),
                            energies.join(",")
                        )
                    })
                    .collect();
                format!("[{}]\n", items.join(","))
            }
            Format::Csv => {
                let mut s = String::from("lambda,k,re,im\n");
                for (l, es) in &rows {
                    for (k, e) in es.iter().enumerate() {
                        let _ = writeln!(s, "{},{},{},{}", fmt9(*l), k + 1, fmt9(e.re), fmt9(e.im));
                    }
                }
                s
            }
        }
    } else {
        let (_, lf) = parse_lambda_real(lambda.unwrap())?;
        let spec = eigenvalues(q, zf, Complex64::new(lf, 0.0))?;
        match format {
            Format::Json => {
                let items: Vec<String> = spec.energies.iter().map(|e| jcomplex(*e)).collect();
                format!("[{}]\n", items.join(","))
            }
            Format::Csv => {
                let mut s = String::from("k,re,im\n");
                for (k, e) in spec.energies.iter().enumerate() {
                    let _ = writeln!(s, "{},{},{}", k + 1, fmt9(e.re), fmt9(e.im));
                }
                s
            }
        }
    };
    emit(out, &content, None)
}

fn cmd_residual(
    parity: ParityArg,
    ntilde: u32,
    zeta: &str,
    lambda: &str,
    grid: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let q = quantization(parity, ntilde)?;
    let (_, zf) = parse_exact("zeta", zeta)?;
    let (_, lf) = parse_lambda_real(lambda)?;
    if grid == 0 {
        return Err(CliError::Validation("grid must be positive".into()));
    }
    let lam = Complex64::new(lf, 0.0);
    let spec = eigenvalues(q, zf, lam)?;
    let mut rows = Vec::new();
    for e in &spec.energies {
        rows.push((*e, schroedinger_residual(q, zf, lam, *e, grid)?));
    }
    let content = match format {
        Format::Json => {
            let items: Vec<String> = rows
                .iter()
                .map(|(e, r)| format!("{{\"energy\":{},\"residual\":{}}}", jcomplex(*e), jnum(*r)))
                .collect();
            format!("[{}]\n", items.join(","))
        }
        Format::Csv => {
            let mut s = String::from("k,re,im,residual\n");
            for (k, (e, r)) in rows.iter().enumerate() {
                let _ = writeln!(s, "{},{},{},{}", k + 1, fmt9(e.re), fmt9(e.im), fmt9(*r));
            }
            s
        }
    };
    emit(out, &content, None)
}

fn cmd_disc(parity: ParityArg, ntilde: u32, out: &Option<PathBuf>) -> Result<(), CliError> {
    let q = quantization(parity, ntilde)?;
    let report = discriminant_in_zhat(q)?;
    let content = format!(
        "{}\nkappa = {}\n",
        format_exact(&report.reduced, "zhat", 2),
        rat_str(&report.kappa)
    );
    emit(out, &content, None)
}

fn cmd_eps(
    parity: ParityArg,
    ntilde: u32,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let q = quantization(parity, ntilde)?;
    let eps = exceptional_points(q)?;
    let content = match format {
        Format::Json => {
            let items: Vec<String> = eps
                .iter()
                .map(|p| {
                    format!(
                        "{{\"t0\":{},\"zhat0\":{},\"x_deg\":{}}}",
                        jnum(p.t0),
                        jnum(p.zhat0),
                        jnum(p.x_deg)
                    )
                })
                .collect();
            format!("[{}]\n", items.join(","))
        }
        Format::Csv => {
            let mut s = String::from("t0,zhat0,x_deg\n");
            for p in &eps {
                let _ = writeln!(s, "{},{},{}", fmt9(p.t0), fmt9(p.zhat0), fmt9(p.x_deg));
            }
            s
        }
    };
    emit(out, &content, None)
}

#[allow(clippy::too_many_arguments)]
fn cmd_loop(
    parity: ParityArg,
    ntilde: u32,
    zeta: &str,
    center: &str,
    radius: f64,
    steps: usize,
    turns: u32,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let q = quantization(parity, ntilde)?;
    let (_, zf) = parse_exact("zeta", zeta)?;
    let c = parse_complex(center)?;
    if turns == 0 {
        return Err(CliError::Validation("turns must be at least 1".into()));
    }
    let trace = trace_loop(q, zf, c, radius, steps, turns)?;
    let summary = format!("cycles: {}", cycle_string(&trace.cycles()));
    let content = loop_csv(&trace, &summary);
    emit(out, &content, Some(&summary))
}

fn loop_csv(trace: &LoopTrace, summary: &str) -> String {
    let mut s = String::from("phi,k,re,im\n");
    for (phi, roots) in &trace.samples {
        for (k, z) in roots.iter().enumerate() {
            let _ = writeln!(s, "{},{},{},{}", fmt9(*phi), k + 1, fmt9(z.re), fmt9(z.im));
        }
    }
    let _ = writeln!(s, "{summary}");
    s
}

fn cmd_measure(
    parity: ParityArg,
    ntilde: u32,
    zeta: &str,
    lambda: &str,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let q = quantization(parity, ntilde)?;
    let (_, zf) = parse_exact("zeta", zeta)?;
    let (_, lf) = parse_lambda_real(lambda)?;
    let m = measure_weights(q, zf, Complex64::new(lf, 0.0))?;
    let sum: Complex64 = m.weights.iter().sum();
    let content = match format {
        Format::Json => {
            let nodes: Vec<String> = m.nodes.iter().map(|z| jcomplex(*z)).collect();
            let weights: Vec<String> = m.weights.iter().map(|z| jcomplex(*z)).collect();
            format!(
                "{{\"nodes\":[{}],\"weights\":[{}],\"weight_sum\":{}}}\n",
                nodes.join(","),
                weights.join(","),
                jcomplex(sum)
            )
        }
        Format::Csv => {
            let mut s = String::from("k,node_re,node_im,weight_re,weight_im\n");
            for (k, (n, w)) in m.nodes.iter().zip(&m.weights).enumerate() {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    k + 1,
                    fmt9(n.re),
                    fmt9(n.im),
                    fmt9(w.re),
                    fmt9(w.im)
                );
            }
            s
        }
    };
    emit(out, &content, None)
}

fn cmd_norms(
    parity: ParityArg,
    ntilde: u32,
    zeta: &str,
    lambda: &str,
    max_order: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let q = quantization(parity, ntilde)?;
    let (zr, _) = parse_exact("zeta", zeta)?;
    let (lr, _) = parse_lambda_real(lambda)?;
    if zr.is_zero() {
        return Err(CliError::Validation("zeta must be nonzero".into()));
    }
    let params = ModelParams::quantized(q, zr, lr)?;
    let prod = norms_product(&params, q.parity, max_order);
    let formula = norms_formula(&params, q.parity, max_order)?;
    if prod != formula {
        return Err(CliError::Numerical(
            "norm product and closed form disagree (internal inconsistency)".into(),
        ));
    }
    // entry j is the norm of P_j (even) or Q_{j+1} (odd)
    let offset = match q.parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let content = match format {
        Format::Json => {
            let items: Vec<String> = prod
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    format!(
                        "{{\"n\":{},\"exact\":\"{}\",\"value\":{}}}",
                        j + offset,
                        rat_str(v),
                        jnum(rational_to_f64(v))
                    )
                })
                .collect();
            format!("[{}]\n", items.join(","))
        }
        Format::Csv => {
            let mut s = String::from("n,exact,value\n");
            for (j, v) in prod.iter().enumerate() {
                let _ = writeln!(s, "{},{},{}", j + offset, rat_str(v), fmt9(rational_to_f64(v)));
            }
            s
        }
    };
    emit(out, &content, None)
}

fn cmd_moments(
    parity: ParityArg,
    ntilde: u32,
    zeta: &str,
    lambda: &str,
    max_order: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let q = quantization(parity, ntilde)?;
    let (zr, zf) = parse_exact("zeta", zeta)?;
    let (lr, lf) = parse_lambda_real(lambda)?;
    if zr.is_zero() {
        return Err(CliError::Validation("zeta must be nonzero".into()));
    }
    let params = ModelParams::quantized(q, zr, lr)?;
    let exact = moments_recurrence(&params, q.parity, max_order);
    let weighted = moments_weights(q, zf, Complex64::new(lf, 0.0), max_order)?;
    let content = match format {
        Format::Json => {
            let items: Vec<String> = exact
                .iter()
                .zip(&weighted)
                .enumerate()
                .map(|(n, (e, w))| {
                    format!(
                        "{{\"order\":{},\"exact\":\"{}\",\"value\":{},\"weighted\":{}}}",
                        n,
                        rat_str(e),
                        jnum(rational_to_f64(e)),
                        jcomplex(*w)
                    )
                })
                .collect();
            format!("[{}]\n", items.join(","))
        }
        Format::Csv => {
            let mut s = String::from("order,exact,value,weighted_re,weighted_im\n");
            for (n, (e, w)) in exact.iter().zip(&weighted).enumerate() {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    n,
                    rat_str(e),
                    fmt9(rational_to_f64(e)),
                    fmt9(w.re),
                    fmt9(w.im)
                );
            }
            s
        }
    };
    emit(out, &content, None)
}

fn cmd_mathieu(
    parity: ParityArg,
    lambdas: &[f64],
    nmax: u32,
    levels: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    if lambdas.is_empty() {
        return Err(CliError::Validation("need at least one lambda".into()));
    }
    if lambdas.contains(&-1.0) {
        return Err(ModelError::LambdaIsMinusOne.into());
    }
    let zeta_m = mathieu_ep(levels, parity.parity())?.g;
    let study = optimal_lambda_study(lambdas, nmax, parity.parity(), zeta_m)?;
    let content = match format {
        Format::Json => {
            let mut rows = Vec::new();
            for (l, lrows) in study.lambdas.iter().zip(&study.rows) {
                for r in lrows {
                    rows.push(format!(
                        "{{\"lambda\":{},\"n\":{},\"capital_n\":{},\"zhat0\":{},\"zeta0\":{},\"g\":{},\"delta\":{}}}",
                        jnum(*l),
                        r.n,
                        jnum(r.capital_n),
                        jnum(r.zhat0),
                        jnum(r.zeta0),
                        jnum(r.g),
                        jnum(r.delta)
                    ));
                }
            }
            let argmin: Vec<String> = study
                .argmin
                .iter()
                .map(|(n, l)| format!("{{\"n\":{},\"lambda\":{}}}", n, jnum(*l)))
                .collect();
            format!(
                "{{\"zeta_m\":{},\"rows\":[{}],\"argmin\":[{}]}}\n",
                jnum(zeta_m),
                rows.join(","),
                argmin.join(",")
            )
        }
        Format::Csv => {
            let mut s = String::from("lambda,n,capital_n,zhat0,zeta0,g,delta\n");
            for (l, lrows) in study.lambdas.iter().zip(&study.rows) {
                for r in lrows {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        fmt9(*l),
                        r.n,
                        fmt9(r.capital_n),
                        fmt9(r.zhat0),
                        fmt9(r.zeta0),
                        fmt9(r.g),
                        fmt9(r.delta)
                    );
                }
            }
            s
        }
    };
    emit(out, &content, None)
}

fn cmd_mathieu_limit(
    parity: ParityArg,
    levels: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let ep = mathieu_ep(levels, parity.parity())?;
    let content = match format {
        Format::Json => {
            let seq: Vec<String> = ep
                .sequence
                .iter()
                .map(|(l, g)| format!("{{\"level\":{},\"g\":{}}}", l, jnum(*g)))
                .collect();
            format!(
                "{{\"parity\":\"{}\",\"sequence\":[{}],\"g\":{}}}\n",
                parity.name(),
                seq.join(","),
                jnum(ep.g)
            )
        }
        Format::Csv => {
            let mut s = String::from("level,g\n");
            for (l, g) in &ep.sequence {
                let _ = writeln!(s, "{},{}", l, fmt9(*g));
            }
            s
        }
    };
    emit(out, &content, None)
}
