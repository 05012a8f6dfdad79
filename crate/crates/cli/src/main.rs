//! `tsmlab` — twisted spherical means and Laguerre spectral projections on ℂ.
//!
//! Subcommands evaluate Laguerre data, compute twisted spherical means and
//! projections of plane functions given as JSON, run the exact vanishing-line
//! verifications, emit the conjecture matrices with exact determinants, scan
//! zero sets to CSV, and run the full self-test battery.
//!
//! Reports are deterministic: identical inputs produce byte-identical JSON
//! (stable key order, floats at 17 significant digits, exact rationals as
//! `"p/q"` strings). Exit codes: 0 success, 1 verification failure, 2 usage
//! error, 3 numeric non-convergence.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::rational::BigRational;
use serde::Serialize;

use tsmlab_core::exact::{parse_rational, rational_string, to_f64};
use tsmlab_core::hb_series::{
    project_to_series, raabe_partial_sum, raabe_sequence, raabe_stirling_estimate, raabe_term,
    recursion_family_exact, tsm_via_spectral,
};
use tsmlab_core::injectivity::{
    assemble_system, assemble_system_with_max_degree, conjecture_matrices, coxeter_k_partition,
    even_series_reference_2x2, null_space, verify_theorem_with_token, ExactMatrix, KPartition,
    LineSystem, MatrixVariant, NullSpaceMode, TheoremReport, VerificationCase,
};
use tsmlab_core::jsonfmt::to_json_string;
use tsmlab_core::laguerre::{laguerre_coefficients, laguerre_real_zeros};
use tsmlab_core::quadrature::QuadratureSpec;
use tsmlab_core::selftest;
use tsmlab_core::twisted_ops::{twisted_spherical_mean, PairingMethod, PlaneFunction};
use tsmlab_core::zerosets::{csv_string, zero_set_grid, GridSpec};
use tsmlab_core::{Error, C64};

#[derive(Parser)]
#[command(
    name = "tsmlab",
    version,
    about = "Twisted spherical means and Laguerre spectral projections on the complex plane"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate Laguerre polynomial data: a value, the value at zero, or the
    /// real zeros.
    Laguerre {
        /// Polynomial index k.
        #[arg(long)]
        k: usize,
        /// Order α, as an integer, fraction `p/q`, or decimal.
        #[arg(long)]
        alpha: String,
        /// Evaluate L_k^α at this point (exact when the point is rational).
        #[arg(long)]
        x: Option<String>,
        /// Print the real zeros of L_k^α, ascending.
        #[arg(long)]
        zeros: bool,
        /// Print L_k^α(0) exactly.
        #[arg(long = "at-zero")]
        at_zero: bool,
    },
    /// Twisted spherical mean of a plane function at one center and radius.
    Tsm {
        /// Path to the function description (JSON).
        input: PathBuf,
        /// Center, as `x,y`.
        #[arg(long)]
        center: String,
        /// Radius of the circle.
        #[arg(long)]
        radius: f64,
        /// Tolerance for the point-doubling self check.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Spectral projection of a plane function as a coefficient series.
    Project {
        /// Path to the function description (JSON).
        input: PathBuf,
        /// Projection index k.
        #[arg(long)]
        k: usize,
        /// Pairing route for the coefficients.
        #[arg(long, value_enum, default_value = "hecke-bochner")]
        method: MethodArg,
        /// Antiholomorphic truncation of the series.
        #[arg(long)]
        qmax: usize,
    },
    /// Closed-form recursion family at k = 1 with its ratio-test diagnostics.
    Series {
        /// Index of the family (the closed form is derived at k = 1).
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Antiholomorphic truncation.
        #[arg(long, default_value_t = 21)]
        qmax: usize,
    },
    /// Verify one named vanishing-line case by exact (or float) elimination.
    Injectivity {
        /// Case label (descriptive or compact spelling).
        #[arg(long)]
        case: String,
        /// Series index k.
        #[arg(long)]
        k: usize,
        /// Antiholomorphic truncation.
        #[arg(long)]
        qmax: usize,
        /// Line count; must match the case when given.
        #[arg(long)]
        lines: Option<usize>,
        /// Elimination mode.
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Emit the elimination matrices with exact determinants over a k range.
    Conjecture {
        /// Line count (the matrix families are derived for 3).
        #[arg(long = "N")]
        n_lines: usize,
        /// Inclusive range `a..b` of series indices.
        #[arg(long = "k-range")]
        k_range: String,
    },
    /// Scan a grid for common zeros of the projections; JSON report to
    /// stdout, optional CSV of all grid values to a file.
    Zeros {
        /// Path to the function description (JSON).
        input: PathBuf,
        /// Largest projection index to scan.
        #[arg(long)]
        kmax: usize,
        /// Grid as `xmin:xmax:ymin:ymax:h`.
        #[arg(long, default_value = "-4:4:-4:4:0.05")]
        grid: String,
        /// Zero classification threshold on max_k |Q_k|.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Write the full `x,y,max_abs_Qk` grid as CSV to this path.
        #[arg(long = "csv-out")]
        csv_out: Option<PathBuf>,
    },
    /// Run the full verification battery; one line per criterion.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Quadrature pairing (independent numeric route).
    Direct,
    /// Closed-form pairing (exact rationals).
    HeckeBochner,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvergence { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(format!("invalid function description: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = check_thread_cap() {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// `TSMLAB_THREADS` caps internal parallelism. All computations currently run
/// on one thread (determinism first), so any cap ≥ 1 is honored as-is.
fn check_thread_cap() -> Result<(), Failure> {
    match std::env::var("TSMLAB_THREADS") {
        Err(_) => Ok(()),
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(Failure::usage(format!(
                "TSMLAB_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode, Failure> {
    match cmd {
        Cmd::Laguerre {
            k,
            alpha,
            x,
            zeros,
            at_zero,
        } => cmd_laguerre(k, &alpha, x.as_deref(), zeros, at_zero),
        Cmd::Tsm {
            input,
            center,
            radius,
            tol,
        } => cmd_tsm(&input, &center, radius, tol),
        Cmd::Project {
            input,
            k,
            method,
            qmax,
        } => cmd_project(&input, k, method, qmax),
        Cmd::Series { k, qmax } => cmd_series(k, qmax),
        Cmd::Injectivity {
            case,
            k,
            qmax,
            lines,
            mode,
        } => cmd_injectivity(&case, k, qmax, lines, mode),
        Cmd::Conjecture { n_lines, k_range } => cmd_conjecture(n_lines, &k_range),
        Cmd::Zeros {
            input,
            kmax,
            grid,
            tol,
            csv_out,
        } => cmd_zeros(&input, kmax, &grid, tol, csv_out.as_deref()),
        Cmd::Selftest => cmd_selftest(),
    }
}

/// Parse `p/q`, integer, or decimal forms into an exact rational.
fn parse_number(s: &str) -> Option<BigRational> {
    if let Some(r) = parse_rational(s) {
        return Some(r);
    }
    let s = s.trim();
    let (int_part, frac_part) = s.split_once('.')?;
    let digits = format!(
        "{}{}",
        if int_part.is_empty() || int_part == "-" {
            "0"
        } else {
            int_part.trim_start_matches('-')
        },
        frac_part
    );
    let num: BigInt = digits.parse().ok()?;
    let num = if s.starts_with('-') { -num } else { num };
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(num, den))
}

fn float_string(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_laguerre(
    k: usize,
    alpha: &str,
    x: Option<&str>,
    zeros: bool,
    at_zero: bool,
) -> Result<ExitCode, Failure> {
    let selections = usize::from(x.is_some()) + usize::from(zeros) + usize::from(at_zero);
    if selections != 1 {
        return Err(Failure::usage(
            "choose exactly one of --x <value>, --zeros, --at-zero",
        ));
    }
    let alpha_rat = parse_number(alpha)
        .ok_or_else(|| Failure::usage(format!("cannot parse order {alpha:?}")))?;
    if at_zero {
        let poly = laguerre_coefficients(k, &alpha_rat);
        println!("{}", rational_string(&poly.coeffs[0]));
    } else if zeros {
        let roots = laguerre_real_zeros(k, to_f64(&alpha_rat));
        let rendered: Vec<String> = roots.iter().map(|r| float_string(*r)).collect();
        println!("{}", rendered.join(", "));
    } else if let Some(x) = x {
        match parse_number(x) {
            Some(x_rat) => {
                let poly = laguerre_coefficients(k, &alpha_rat);
                println!("{}", rational_string(&poly.eval_exact(&x_rat)));
            }
            None => {
                let x: f64 = x
                    .parse()
                    .map_err(|_| Failure::usage(format!("cannot parse point {x:?}")))?;
                println!(
                    "{}",
                    float_string(tsmlab_core::laguerre::laguerre_value(
                        k,
                        to_f64(&alpha_rat),
                        x
                    ))
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_function(path: &std::path::Path) -> Result<PlaneFunction, Failure> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn parse_center(s: &str) -> Result<C64, Failure> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::usage(format!("center must be `x,y`, got {s:?}")))?;
    let x: f64 = a
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("bad center component {a:?}")))?;
    let y: f64 = b
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("bad center component {b:?}")))?;
    Ok(C64::new(x, y))
}

#[derive(Serialize)]
struct TsmOutput {
    #[serde(with = "tsmlab_core::jsonfmt::complex_pair")]
    value: C64,
    error_estimate: f64,
    /// The same mean through the spectral route `(1/2π) Σ_k φ_k(r) Q_k(z)` —
    /// an independent cross-check carried in every report.
    #[serde(with = "tsmlab_core::jsonfmt::complex_pair")]
    spectral_value: C64,
    spectral_deviation: f64,
}

fn cmd_tsm(path: &std::path::Path, center: &str, radius: f64, tol: f64) -> Result<ExitCode, Failure> {
    if !(radius > 0.0) {
        return Err(Failure::usage("radius must be positive"));
    }
    if !(tol > 0.0) {
        return Err(Failure::usage("tolerance must be positive"));
    }
    let f = load_function(path)?;
    let z = parse_center(center)?;
    let spec = QuadratureSpec::auto(z, 0, f.max_poly_degree()).with_tol(tol);
    let mean = twisted_spherical_mean(&f, z, radius, &spec)?;
    let spectral = tsm_via_spectral(&f, z, radius, PairingMethod::Exact);
    let out = TsmOutput {
        value: mean.value,
        error_estimate: mean.error_estimate,
        spectral_value: spectral,
        spectral_deviation: (mean.value - spectral).norm(),
    };
    println!("{}", to_json_string(&out));
    Ok(ExitCode::SUCCESS)
}

fn cmd_project(
    path: &std::path::Path,
    k: usize,
    method: MethodArg,
    qmax: usize,
) -> Result<ExitCode, Failure> {
    let f = load_function(path)?;
    let method = match method {
        MethodArg::Direct => PairingMethod::Quadrature,
        MethodArg::HeckeBochner => PairingMethod::Exact,
    };
    let projection = project_to_series(&f, k, qmax, method);
    println!("{}", to_json_string(&projection));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SeriesOutput {
    k: usize,
    q_max: usize,
    /// Exact family coefficients, `"p/q"` strings keyed by index.
    c_hol: BTreeMap<usize, String>,
    c_anti: BTreeMap<usize, String>,
    /// Ratio-test value `m(b_{m+1}/b_m − 1)` at m = 10⁴ (limit −1/2).
    raabe_m: usize,
    raabe_value: f64,
    /// Σ_{m ≤ 100} b_m — past 10, witnessing divergence.
    raabe_partial_sum_100: f64,
    /// |b_m / (4/√(π(m+1))) − 1| at m = 10⁴.
    raabe_stirling_deviation: f64,
}

fn cmd_series(k: usize, qmax: usize) -> Result<ExitCode, Failure> {
    if k != 1 {
        return Err(Failure::usage(
            "the closed-form family is derived at k = 1; pass --k 1",
        ));
    }
    let mut c_hol = BTreeMap::new();
    c_hol.insert(1usize, "-2".to_string());
    let c_anti: BTreeMap<usize, String> = recursion_family_exact(qmax)
        .into_iter()
        .map(|(q, c)| (q, rational_string(&c)))
        .collect();
    let m = 10_000usize;
    let out = SeriesOutput {
        k,
        q_max: qmax,
        c_hol,
        c_anti,
        raabe_m: m,
        raabe_value: raabe_sequence(m),
        raabe_partial_sum_100: raabe_partial_sum(100),
        raabe_stirling_deviation: (raabe_term(m) / raabe_stirling_estimate(m) - 1.0).abs(),
    };
    println!("{}", to_json_string(&out));
    Ok(ExitCode::SUCCESS)
}

fn cmd_injectivity(
    token: &str,
    k: usize,
    qmax: usize,
    lines: Option<usize>,
    mode: ModeArg,
) -> Result<ExitCode, Failure> {
    let case = VerificationCase::parse(token)
        .ok_or_else(|| Failure::usage(format!("unknown case {token:?}")))?;
    let case_lines = match case {
        VerificationCase::LineK0
        | VerificationCase::LineK1Probe
        | VerificationCase::LinePolynomial => 1,
        _ => 2,
    };
    if let Some(n) = lines {
        if n != case_lines {
            return Err(Failure::usage(format!(
                "case {token} runs on {case_lines} line(s), not {n}"
            )));
        }
    }
    let report = match mode {
        ModeArg::Exact => verify_theorem_with_token(case, token, k, qmax)?,
        ModeArg::Float => {
            let line_system = LineSystem::coxeter(case_lines);
            let (sys, expected) = match case {
                VerificationCase::LineK1Probe => (
                    assemble_system_with_max_degree(k, qmax, &line_system, qmax)?,
                    1,
                ),
                _ => (assemble_system(k, qmax, &line_system)?, 0),
            };
            let ns = null_space(&sys, NullSpaceMode::Float);
            TheoremReport {
                case: token.to_string(),
                k,
                q_max: qmax,
                n_lines: case_lines,
                null_dim: ns.dimension,
                expected,
                blocks: None,
                witness: None,
            }
        }
    };
    let passed = report.passed();
    println!("{}", to_json_string(&report));
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct ConjectureEntry {
    k: usize,
    partition: KPartition,
    matrices: Vec<ExactMatrix>,
}

#[derive(Serialize)]
struct ConjectureOutput {
    case: &'static str,
    #[serde(rename = "N")]
    n_lines: usize,
    k_range: String,
    /// The fixed even-series reference pair, independent of k.
    reference: Vec<ExactMatrix>,
    entries: Vec<ConjectureEntry>,
}

fn parse_k_range(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once("..")?;
    let a: usize = a.trim().parse().ok()?;
    let b: usize = b.trim().parse().ok()?;
    (a <= b).then_some((a, b))
}

fn cmd_conjecture(n_lines: usize, k_range: &str) -> Result<ExitCode, Failure> {
    let (a, b) = parse_k_range(k_range)
        .ok_or_else(|| Failure::usage(format!("k-range must be `a..b` with a ≤ b, got {k_range:?}")))?;
    if a == 0 {
        return Err(Failure::usage("the matrix families start at k = 1"));
    }
    let mut entries = Vec::new();
    let mut all_nonzero = true;
    for k in a..=b {
        let matrices = conjecture_matrices(n_lines, k)?;
        all_nonzero &= matrices.iter().all(|m| m.determinant != "0");
        entries.push(ConjectureEntry {
            k,
            partition: coxeter_k_partition(k),
            matrices,
        });
    }
    let reference = vec![
        even_series_reference_2x2(MatrixVariant::DefiningSum),
        even_series_reference_2x2(MatrixVariant::AsDisplayed),
    ];
    all_nonzero &= reference.iter().all(|m| m.determinant != "0");
    let out = ConjectureOutput {
        case: "conjecture",
        n_lines,
        k_range: format!("{a}..{b}"),
        reference,
        entries,
    };
    println!("{}", to_json_string(&out));
    Ok(if all_nonzero {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_grid(s: &str) -> Option<GridSpec> {
    let parts: Vec<f64> = s.split(':').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
    let [x_min, x_max, y_min, y_max, h] = parts.as_slice() else {
        return None;
    };
    (*h > 0.0 && x_max > x_min && y_max > y_min).then_some(GridSpec {
        x_min: *x_min,
        x_max: *x_max,
        y_min: *y_min,
        y_max: *y_max,
        h: *h,
    })
}

#[derive(Serialize)]
struct ZerosOutput {
    k_max: usize,
    tol: f64,
    grid: GridSpec,
    zero_count: usize,
    zero_points: Vec<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    csv_path: Option<String>,
}

fn cmd_zeros(
    path: &std::path::Path,
    kmax: usize,
    grid: &str,
    tol: f64,
    csv_out: Option<&std::path::Path>,
) -> Result<ExitCode, Failure> {
    if !(tol > 0.0) {
        return Err(Failure::usage("tolerance must be positive"));
    }
    let f = load_function(path)?;
    let grid = parse_grid(grid)
        .ok_or_else(|| Failure::usage("grid must be `xmin:xmax:ymin:ymax:h` with h > 0"))?;
    let report = zero_set_grid(&f, kmax, &grid, tol)?;
    if let Some(csv_path) = csv_out {
        std::fs::write(csv_path, csv_string(&report))?;
    }
    let out = ZerosOutput {
        k_max: report.k_max,
        tol: report.tol,
        grid,
        zero_count: report.zero_points.len(),
        zero_points: report.zero_points,
        csv_path: csv_out.map(|p| p.display().to_string()),
    };
    println!("{}", to_json_string(&out));
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest() -> Result<ExitCode, Failure> {
    let results = selftest::run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        println!("selftest: all {} criteria passed", results.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("selftest: {failed} of {} criteria FAILED", results.len());
        Ok(ExitCode::from(1))
    }
}
