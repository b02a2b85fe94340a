//! Command-line interface.
//!
//! Exit codes: `0` for success (including "inequality holds"), `2` when a
//! check or scan detects at least one violation, `1` for usage or
//! computation errors (bad flags, singular input to the matrix logarithm,
//! and so on).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::entropy::{entropy_report, von_neumann_tr, Units, BOLTZMANN};
use crate::error::{Error, Result};
use crate::inequality::{
    check_cerf_adami, check_entropy, check_matrix, check_wigner_prob, IneqKind, IneqVerdict,
    MatrixOrder,
};
use crate::mat2::Mat2;
use crate::matlog::{logm_with_tol, DEFAULT_DET_TOL};
use crate::qstate::{
    density_from_ket, make_ket, mix_pair, paper_literal_density, Axis, DensityMatrix, Sign,
};
use crate::scan::{emit, run_scan, AngleRange, OutputFormat, ScanConfig, ScanKind, DEFAULT_STEP};

#[derive(Parser)]
#[command(
    name = "belltropy",
    version,
    about = "Spin-measurement density matrices, entropies, and Bell-type inequality maps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the density matrix of one measurement outcome as JSON.
    Density(DensityArgs),
    /// Print the even mixture of two outcome states as JSON.
    Mix(MixArgs),
    /// Report dimensionless and thermodynamic entropy, by both routes.
    Entropy(EntropyArgs),
    /// Matrix logarithm with method and complexity report.
    Logm(LogmArgs),
    /// Evaluate one inequality at a single point.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Sweep one inequality over an angle grid.
    #[command(subcommand)]
    Scan(ScanCmd),
}

#[derive(Args)]
struct DensityArgs {
    /// Polar angle of the measurement axis, radians.
    #[arg(long, allow_negative_numbers = true)]
    beta_a: f64,
    /// Azimuthal angle of the measurement axis, radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Which outcome beam: + or -.
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    sign_a: Sign,
    /// Use the literal variant with unconjugated phase factors (not
    /// Hermitian off the alpha = 0 plane, and always singular).
    #[arg(long)]
    paper_literal: bool,
}

#[derive(Args)]
struct MixArgs {
    /// Polar angle of the first axis, radians.
    #[arg(long, allow_negative_numbers = true)]
    beta_a: f64,
    /// Polar angle of the second axis, radians.
    #[arg(long, allow_negative_numbers = true)]
    beta_b: f64,
    /// Shared azimuthal angle, radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    sign_a: Sign,
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    sign_b: Sign,
}

#[derive(Args)]
struct EntropyArgs {
    /// Density matrix as a JSON 2x2 array of [re, im] pairs.
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    matrix: Option<Mat2>,
    /// Polar angle of the measurement axis, radians (alternative to --matrix).
    #[arg(long, allow_negative_numbers = true)]
    beta_a: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    sign_a: Sign,
}

#[derive(Args)]
struct LogmArgs {
    /// Input matrix as a JSON 2x2 array of [re, im] pairs.
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    matrix: Mat2,
    /// Invertibility tolerance on |det|.
    #[arg(long, default_value_t = DEFAULT_DET_TOL)]
    tol: f64,
}

#[derive(Args)]
struct TripleArgs {
    /// First angle, radians.
    #[arg(long, allow_negative_numbers = true)]
    beta_a: f64,
    /// Second angle, radians.
    #[arg(long, allow_negative_numbers = true)]
    beta_b: f64,
    /// Third angle, radians.
    #[arg(long, allow_negative_numbers = true)]
    beta_c: f64,
}

#[derive(Args)]
struct SignTripleArgs {
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    sign_a: Sign,
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    sign_b: Sign,
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    sign_c: Sign,
}

impl SignTripleArgs {
    fn triple(&self) -> [Sign; 3] {
        [self.sign_a, self.sign_b, self.sign_c]
    }
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Pairwise same-outcome probability chaining on singlet statistics.
    Wigner(TripleArgs),
    /// Mixture comparison in the entrywise or positive-semidefinite order.
    Matrix {
        #[command(flatten)]
        angles: TripleArgs,
        #[command(flatten)]
        signs: SignTripleArgs,
        /// Comparison order: entrywise or loewner.
        #[arg(long, default_value = "entrywise", value_parser = parse_mode)]
        mode: MatrixOrder,
    },
    /// Entropic form of the mixture comparison.
    Entropy {
        #[command(flatten)]
        angles: TripleArgs,
        #[command(flatten)]
        signs: SignTripleArgs,
    },
    /// Conditional-entropy chaining; the three angles are the analyzer
    /// gaps theta_ab, theta_bc, theta_ac.
    #[command(alias = "cerf")]
    CerfAdami {
        #[command(flatten)]
        angles: TripleArgs,
        /// Entropy unit for the reported margin.
        #[arg(long, default_value = "nats", value_parser = parse_units)]
        units: Units,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Grid for the first angle: "start:stop:step", "start:stop", or a
    /// single value (radians; ranges are half-open).
    #[arg(long, allow_hyphen_values = true)]
    range_a: Option<String>,
    /// Grid for the second angle; same syntax as --range-a.
    #[arg(long, allow_hyphen_values = true)]
    range_b: Option<String>,
    /// Grid for the third angle; same syntax as --range-a.
    #[arg(long, allow_hyphen_values = true)]
    range_c: Option<String>,
    /// Step used by ranges that do not name one (default pi/36).
    #[arg(long)]
    step: Option<f64>,
    /// Derive the third angle as the sum of the first two.
    #[arg(long)]
    coplanar: bool,
    /// Output format on stdout.
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum ScanCmd {
    /// Sweep the probability-chaining inequality.
    Wigner(GridArgs),
    /// Sweep the mixture comparison.
    Matrix {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        signs: SignTripleArgs,
        /// Comparison order: entrywise or loewner.
        #[arg(long, default_value = "entrywise", value_parser = parse_mode)]
        mode: MatrixOrder,
    },
    /// Sweep the entropic mixture comparison.
    Entropy {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        signs: SignTripleArgs,
    },
    /// Sweep the conditional-entropy chaining over gap triples.
    #[command(alias = "cerf")]
    CerfAdami {
        #[command(flatten)]
        grid: GridArgs,
        /// Entropy unit for margins.
        #[arg(long, default_value = "nats", value_parser = parse_units)]
        units: Units,
    },
}

fn parse_sign(s: &str) -> std::result::Result<Sign, String> {
    s.parse::<Sign>().map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<MatrixOrder, String> {
    match s {
        "entrywise" => Ok(MatrixOrder::Entrywise),
        "loewner" => Ok(MatrixOrder::Loewner),
        other => Err(format!("unknown mode {other:?}; use entrywise or loewner")),
    }
}

fn parse_units(s: &str) -> std::result::Result<Units, String> {
    match s {
        "nats" => Ok(Units::Nats),
        "bits" => Ok(Units::Bits),
        other => Err(format!("unknown units {other:?}; use nats or bits")),
    }
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format {other:?}; use csv or json")),
    }
}

fn parse_matrix(s: &str) -> std::result::Result<Mat2, String> {
    serde_json::from_str::<Mat2>(s)
        .map_err(|e| format!("matrix must be a JSON 2x2 array of [re, im] pairs: {e}"))
}

/// Parse "start:stop:step" (or "start:stop", or a bare value) into a range.
fn parse_range(spec: &str, default_step: f64) -> Result<AngleRange> {
    let num = |part: &str| -> Result<f64> {
        part.trim()
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("bad number {part:?} in range {spec:?}")))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [value] => Ok(AngleRange::single(num(value)?)),
        [start, stop] => AngleRange::new(num(start)?, num(stop)?, default_step),
        [start, stop, step] => AngleRange::new(num(start)?, num(stop)?, num(step)?),
        _ => Err(Error::Config(format!(
            "range {spec:?} must be start:stop:step"
        ))),
    }
}

fn matrix_json(m: &Mat2) -> String {
    serde_json::to_string(m).expect("a 2x2 matrix always serializes")
}

fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Run the CLI against the given argument vector and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Density(args) => cmd_density(args),
        Cmd::Mix(args) => cmd_mix(args),
        Cmd::Entropy(args) => cmd_entropy(args),
        Cmd::Logm(args) => cmd_logm(args),
        Cmd::Check(check) => cmd_check(check),
        Cmd::Scan(scan) => cmd_scan(scan),
    }
}

fn cmd_density(args: DensityArgs) -> Result<i32> {
    let axis = Axis::new(args.alpha, args.beta_a);
    let matrix = if args.paper_literal {
        paper_literal_density(axis, args.sign_a)
    } else {
        *density_from_ket(&make_ket(axis, args.sign_a))?.mat()
    };
    println!("{}", matrix_json(&matrix));
    Ok(0)
}

fn cmd_mix(args: MixArgs) -> Result<i32> {
    let state = |beta: f64, sign: Sign| -> Result<DensityMatrix> {
        density_from_ket(&make_ket(Axis::new(args.alpha, beta), sign))
    };
    let mixed = mix_pair(
        &state(args.beta_a, args.sign_a)?,
        &state(args.beta_b, args.sign_b)?,
    );
    println!("{}", matrix_json(mixed.mat()));
    Ok(0)
}

fn cmd_entropy(args: EntropyArgs) -> Result<i32> {
    let rho = match (args.matrix, args.beta_a) {
        (Some(m), _) => DensityMatrix::new(m)?,
        (None, Some(beta)) => {
            density_from_ket(&make_ket(Axis::new(args.alpha, beta), args.sign_a))?
        }
        (None, None) => {
            return Err(Error::Config(
                "provide a state via --matrix or --beta-a".into(),
            ))
        }
    };
    let report = entropy_report(&rho)?;
    println!(
        "eigenvalues: {},{}",
        sig17(report.basis_eigenvalues[0]),
        sig17(report.basis_eigenvalues[1])
    );
    println!("sigma_nats: {}", sig17(report.sigma));
    println!("entropy_joule_per_kelvin: {}", sig17(report.s_thermo));
    match von_neumann_tr(&rho) {
        Ok(sigma_tr) => {
            println!("sigma_nats_trace_route: {}", sig17(sigma_tr));
            Ok(0)
        }
        Err(err) => {
            eprintln!("trace route failed: {err}");
            Ok(1)
        }
    }
}

fn cmd_logm(args: LogmArgs) -> Result<i32> {
    let result = logm_with_tol(&args.matrix, args.tol)?;
    println!("logm: {}", matrix_json(&result.matrix));
    println!("method: {}", result.method);
    println!("is_complex: {}", result.is_complex);
    Ok(0)
}

fn print_verdict(verdict: &IneqVerdict) {
    println!("kind: {}", verdict.kind);
    println!("holds: {}", verdict.holds);
    println!("worst_margin: {}", sig17(verdict.worst_margin));
    let margins: Vec<String> = verdict.margins.iter().map(|&m| sig17(m)).collect();
    println!("margins: {}", margins.join(","));
    if verdict.kind == IneqKind::Entropic {
        println!(
            "worst_margin_thermo_joule_per_kelvin: {}",
            sig17(BOLTZMANN * verdict.worst_margin)
        );
    }
}

fn cmd_check(check: CheckCmd) -> Result<i32> {
    let verdict = match check {
        CheckCmd::Wigner(t) => check_wigner_prob(t.beta_a, t.beta_b, t.beta_c),
        CheckCmd::Matrix {
            angles,
            signs,
            mode,
        } => check_matrix(
            [angles.beta_a, angles.beta_b, angles.beta_c],
            signs.triple(),
            mode,
        )?,
        CheckCmd::Entropy { angles, signs } => check_entropy(
            [angles.beta_a, angles.beta_b, angles.beta_c],
            signs.triple(),
        ),
        CheckCmd::CerfAdami { angles, units } => {
            check_cerf_adami(angles.beta_a, angles.beta_b, angles.beta_c, units)
        }
    };
    print_verdict(&verdict);
    Ok(if verdict.holds { 0 } else { 2 })
}

fn build_config(
    kind: ScanKind,
    grid: GridArgs,
    signs: Option<[Sign; 3]>,
    mode: Option<MatrixOrder>,
    units: Option<Units>,
) -> Result<ScanConfig> {
    let mut config = ScanConfig::new(kind);
    let step = grid.step.unwrap_or(DEFAULT_STEP);
    let default_range = AngleRange::full_turn(step)?;
    for (slot, spec) in config
        .ranges
        .iter_mut()
        .zip([&grid.range_a, &grid.range_b, &grid.range_c])
    {
        *slot = match spec {
            Some(spec) => parse_range(spec, step)?,
            None => default_range,
        };
    }
    if let Some(signs) = signs {
        config.signs = signs;
    }
    if let Some(mode) = mode {
        config.mode = mode;
    }
    if let Some(units) = units {
        config.units = units;
    }
    config.coplanar = grid.coplanar;
    config.output_format = grid.format;
    Ok(config)
}

fn cmd_scan(scan: ScanCmd) -> Result<i32> {
    let config = match scan {
        ScanCmd::Wigner(grid) => build_config(ScanKind::WignerProb, grid, None, None, None)?,
        ScanCmd::Matrix { grid, signs, mode } => build_config(
            ScanKind::Matrix,
            grid,
            Some(signs.triple()),
            Some(mode),
            None,
        )?,
        ScanCmd::Entropy { grid, signs } => {
            build_config(ScanKind::Entropic, grid, Some(signs.triple()), None, None)?
        }
        ScanCmd::CerfAdami { grid, units } => {
            build_config(ScanKind::CerfAdami, grid, None, None, Some(units))?
        }
    };
    let (records, summary) = run_scan(&config)?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    emit(&mut out, &config, &records, &summary)?;
    out.flush()?;
    eprintln!(
        "scanned {} points: {} violations",
        summary.total_points, summary.violations
    );
    if let Some(worst) = &summary.worst_violation {
        eprintln!(
            "worst violation: margin {} at ({}, {}, {})",
            sig17(worst.margin),
            sig17(worst.angles[0]),
            sig17(worst.angles[1]),
            sig17(worst.angles[2])
        );
    }
    if let Some(best) = &summary.largest_hold_margin {
        eprintln!(
            "largest hold margin: {} at ({}, {}, {})",
            sig17(best.margin),
            sig17(best.angles[0]),
            sig17(best.angles[1]),
            sig17(best.angles[2])
        );
    }
    Ok(if summary.violations > 0 { 2 } else { 0 })
}
