//! Command-line front end: spectrum/vectors/operators presentation, the
//! verification battery, and a one-parameter scanner for the phase diagram.
//!
//! Exit codes: 0 when expected outcomes are met, 1 when the battery lands off
//! its expected-verdict table, 2 on usage errors. Data goes to stdout,
//! diagnostics to stderr. Output is byte-stable for identical invocations.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::claims::{
    battery_verdict, expected_verdict, run_battery, BatteryResult, Verdict, DEFAULT_TOL_EQ,
    DEFAULT_TOL_INEQ,
};
use crate::cxmat::{commutator, AntilinearOp, Mat2C};
use crate::hamiltonian::{
    build_hamiltonian, corrected_vectors, legacy_vectors, spectrum, HamiltonianParams, PTPhase,
    DEFAULT_PHASE_TOL,
};
use crate::symmetry::{
    c_operator, cpt_operator, legacy_c_operator, parity, pt_operator, time_reversal,
};

/// Absolute tolerance on `c^2 - b^2` to which the scanner refines a phase
/// crossing.
pub const SCAN_EP_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Number and complex rendering
// ---------------------------------------------------------------------------

/// Significant digits used in human-readable text output.
pub const TEXT_SIG_DIGITS: usize = 6;

/// Format with `sig` significant digits, positional where reasonable and
/// exponential otherwise (the usual `%g` behavior). `-0` renders as `0`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sig = sig.max(1);
    let exp_form = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = exp_form
        .split_once('e')
        .expect("exponential format always contains e");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp >= -4 && exp < sig as i32 {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_trailing_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_trailing_zeros(mantissa.to_string()))
    }
}

fn trim_trailing_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Text rendering of a complex value: `x`, `yi`, or `x±yi`, with unit
/// imaginary parts shortened to `i`.
pub fn fmt_complex(z: Complex64, sig: usize) -> String {
    let re_zero = z.re == 0.0;
    let im_zero = z.im == 0.0;
    if im_zero {
        return fmt_sig(z.re, sig);
    }
    let im_mag = fmt_sig(z.im.abs(), sig);
    let im_part = if im_mag == "1" {
        "i".to_string()
    } else {
        format!("{im_mag}i")
    };
    let sign = if z.im < 0.0 { "-" } else { "+" };
    if re_zero {
        format!("{}{im_part}", if z.im < 0.0 { "-" } else { "" })
    } else {
        format!("{}{sign}{im_part}", fmt_sig(z.re, sig))
    }
}

/// Round-trip-safe machine rendering for CSV fields.
pub fn fmt_machine(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

fn nonneg_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

// ---------------------------------------------------------------------------
// JSON building blocks
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct JsonComplex {
    re: f64,
    im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self {
            re: nonneg_zero(z.re),
            im: nonneg_zero(z.im),
        }
    }
}

#[derive(Serialize)]
struct JsonParams {
    a: f64,
    b: f64,
    c: f64,
}

impl From<&HamiltonianParams> for JsonParams {
    fn from(p: &HamiltonianParams) -> Self {
        Self {
            a: nonneg_zero(p.a),
            b: nonneg_zero(p.b),
            c: nonneg_zero(p.c),
        }
    }
}

type JsonMatrix = [[JsonComplex; 2]; 2];

fn json_matrix(m: &Mat2C) -> JsonMatrix {
    [[m.m00.into(), m.m01.into()], [m.m10.into(), m.m11.into()]]
}

#[derive(Serialize)]
#[serde(untagged)]
enum Section<T: Serialize> {
    Ok(T),
    Err { error: String },
}

impl<T: Serialize> Section<T> {
    fn from_result<E: std::fmt::Display>(r: Result<T, E>) -> Self {
        match r {
            Ok(v) => Section::Ok(v),
            Err(e) => Section::Err {
                error: e.to_string(),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Scanner
// ---------------------------------------------------------------------------

/// Which of the three parameters a scan sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    A,
    B,
    C,
}

impl SweepParam {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::A => "a",
            SweepParam::B => "b",
            SweepParam::C => "c",
        }
    }

    fn with_value(&self, base: &HamiltonianParams, v: f64) -> HamiltonianParams {
        let mut p = *base;
        match self {
            SweepParam::A => p.a = v,
            SweepParam::B => p.b = v,
            SweepParam::C => p.c = v,
        }
        p
    }
}

/// One grid point of a scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub value: f64,
    pub e_minus: Complex64,
    pub e_plus: Complex64,
    pub phase: PTPhase,
    /// `|[H, C]|`, absent where the C operator is singular.
    pub comm_residual: Option<f64>,
}

/// A phase crossing refined to `|c^2 - b^2| <= SCAN_EP_TOL`.
#[derive(Debug, Clone, Copy)]
pub struct ExceptionalPointHit {
    pub value: f64,
    pub discriminant: f64,
}

#[derive(Debug, Clone)]
pub struct ScanOutput {
    pub rows: Vec<ScanRow>,
    pub exceptional_points: Vec<ExceptionalPointHit>,
}

/// Evaluate the spectrum over a uniform grid and locate every sign change of
/// `c^2 - b^2` by bisection. Grid points that already sit on the crossing are
/// reported directly.
pub fn run_scan(
    base: &HamiltonianParams,
    sweep: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
) -> ScanOutput {
    assert!(steps >= 2, "caller validates steps >= 2");
    assert!(from < to, "caller validates from < to");

    let grid_value = |k: usize| from + (to - from) * (k as f64) / ((steps - 1) as f64);
    let disc_at = |v: f64| sweep.with_value(base, v).discriminant();

    let mut rows = Vec::with_capacity(steps);
    let mut exceptional_points = Vec::new();
    let mut prev: Option<(f64, f64, bool)> = None; // (value, disc, was grid hit)

    for k in 0..steps {
        let v = grid_value(k);
        let p = sweep.with_value(base, v);
        let spec = spectrum(&p, DEFAULT_PHASE_TOL);
        let comm_residual = c_operator(&p)
            .ok()
            .map(|c| commutator(&build_hamiltonian(&p), &c).frobenius_norm());
        rows.push(ScanRow {
            value: v,
            e_minus: spec.e_minus,
            e_plus: spec.e_plus,
            phase: spec.phase,
            comm_residual,
        });

        let d = disc_at(v);
        let hit = d.abs() <= SCAN_EP_TOL;
        if hit {
            // Report a grid point that lands on the crossing, once per run of
            // consecutive hits.
            if !matches!(prev, Some((_, _, true))) {
                exceptional_points.push(ExceptionalPointHit {
                    value: v,
                    discriminant: d,
                });
            }
        } else if let Some((pv, pd, false)) = prev {
            if (pd > 0.0) != (d > 0.0) {
                let value = bisect_crossing(&disc_at, pv, pd, v);
                exceptional_points.push(ExceptionalPointHit {
                    value,
                    discriminant: disc_at(value),
                });
            }
        }
        prev = Some((v, d, hit));
    }

    ScanOutput {
        rows,
        exceptional_points,
    }
}

fn bisect_crossing(f: &dyn Fn(f64) -> f64, mut lo: f64, mut f_lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid.abs() <= SCAN_EP_TOL || (hi - lo).abs() <= f64::EPSILON * mid.abs().max(1.0) {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "ptcheck",
    version,
    about = "Spectrum, symmetry operators, and identity checks for the two-level pseudo-Hermitian family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Shift parameter a
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Coupling parameter b
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Splitting parameter c
    #[arg(long, allow_negative_numbers = true)]
    c: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Threshold for equality checks
    #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_TOL_EQ)]
    tol_eq: f64,
    /// Threshold for inequality checks
    #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_TOL_INEQ)]
    tol_ineq: f64,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Parameter to sweep
    #[arg(long, value_enum)]
    sweep: SweepParam,
    /// Start of the sweep range
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    /// End of the sweep range (exclusive of nothing; the grid includes it)
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    /// Number of grid points
    #[arg(long, allow_negative_numbers = true)]
    steps: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form eigenvalues, discriminant root, and phase
    Spectrum(ParamArgs),
    /// Both eigenvector families
    Vectors(ParamArgs),
    /// The C, P, T, PT, and CPT operators
    Operators(ParamArgs),
    /// Run the identity-verification battery
    Verify(VerifyArgs),
    /// Sweep one parameter and locate phase crossings
    Scan(ScanArgs),
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

/// Parse arguments from the process environment and run; returns the exit
/// code for the caller to pass to `std::process::exit`.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors.
            e.exit();
        }
    };

    match cli.command {
        Command::Spectrum(args) => with_valid_params(&args, cmd_spectrum),
        Command::Vectors(args) => with_valid_params(&args, cmd_vectors),
        Command::Operators(args) => with_valid_params(&args, cmd_operators),
        Command::Verify(args) => cmd_verify(&args),
        Command::Scan(args) => cmd_scan(&args),
    }
}

fn with_valid_params(args: &ParamArgs, f: impl Fn(&HamiltonianParams, Format) -> i32) -> i32 {
    let p = HamiltonianParams::new(args.a, args.b, args.c);
    if !p.all_finite() {
        return usage_error("parameters a, b, c must be finite");
    }
    f(&p, args.format)
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SpectrumOut {
    params: JsonParams,
    s: JsonComplex,
    e_minus: JsonComplex,
    e_plus: JsonComplex,
    phase: &'static str,
}

fn cmd_spectrum(p: &HamiltonianParams, format: Format) -> i32 {
    let spec = spectrum(p, DEFAULT_PHASE_TOL);
    match format {
        Format::Text => {
            print_params_line(p);
            println!("s  = {}", fmt_complex(spec.s, TEXT_SIG_DIGITS));
            println!("E- = {}", fmt_complex(spec.e_minus, TEXT_SIG_DIGITS));
            println!("E+ = {}", fmt_complex(spec.e_plus, TEXT_SIG_DIGITS));
            println!("phase = {}", spec.phase.as_str());
        }
        Format::Json => {
            let out = SpectrumOut {
                params: p.into(),
                s: spec.s.into(),
                e_minus: spec.e_minus.into(),
                e_plus: spec.e_plus.into(),
                phase: spec.phase.as_str(),
            };
            print_json(&out);
        }
        Format::Csv => {
            println!("a,b,c,re_s,im_s,re_e_minus,im_e_minus,re_e_plus,im_e_plus,phase");
            println!(
                "{},{},{},{},{},{},{},{},{},{}",
                fmt_machine(p.a),
                fmt_machine(p.b),
                fmt_machine(p.c),
                fmt_machine(nonneg_zero(spec.s.re)),
                fmt_machine(nonneg_zero(spec.s.im)),
                fmt_machine(nonneg_zero(spec.e_minus.re)),
                fmt_machine(nonneg_zero(spec.e_minus.im)),
                fmt_machine(nonneg_zero(spec.e_plus.re)),
                fmt_machine(nonneg_zero(spec.e_plus.im)),
                spec.phase.as_str()
            );
        }
    }
    0
}

// ---------------------------------------------------------------------------
// vectors
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct LegacyOut {
    r: JsonComplex,
    psi_minus: [JsonComplex; 2],
    psi_plus: [JsonComplex; 2],
}

#[derive(Serialize)]
struct CorrectedOut {
    r_plus: JsonComplex,
    r_minus: JsonComplex,
    phi_minus: [JsonComplex; 2],
    phi_plus: [JsonComplex; 2],
    coalescent: bool,
}

#[derive(Serialize)]
struct VectorsOut {
    params: JsonParams,
    phase: &'static str,
    legacy: Section<LegacyOut>,
    corrected: Section<CorrectedOut>,
    warnings: Vec<String>,
}

fn domain_warnings(p: &HamiltonianParams, coalescent: bool) -> Vec<String> {
    let mut warnings = Vec::new();
    if !p.in_analytic_domain() {
        warnings.push(
            "outside analytic domain (b > 0 and c > 0 assumed); eigenvector formulas may not apply"
                .to_string(),
        );
    }
    if coalescent {
        warnings.push("eigenvectors coalesce (s = 0)".to_string());
    }
    warnings
}

fn cmd_vectors(p: &HamiltonianParams, format: Format) -> i32 {
    let spec = spectrum(p, DEFAULT_PHASE_TOL);
    let legacy = legacy_vectors(p);
    let corrected = corrected_vectors(p);
    let coalescent = corrected.as_ref().map(|b| b.coalescent).unwrap_or(false);
    let warnings = domain_warnings(p, coalescent);

    match format {
        Format::Text => {
            print_params_line(p);
            println!("phase = {}", spec.phase.as_str());
            match &legacy {
                Ok(basis) => {
                    println!("legacy basis:");
                    println!("  r    = {}", fmt_complex(basis.r, TEXT_SIG_DIGITS));
                    println!(
                        "  psi- = ({}, {})",
                        fmt_complex(basis.psi_minus.x0, TEXT_SIG_DIGITS),
                        fmt_complex(basis.psi_minus.x1, TEXT_SIG_DIGITS)
                    );
                    println!(
                        "  psi+ = ({}, {})",
                        fmt_complex(basis.psi_plus.x0, TEXT_SIG_DIGITS),
                        fmt_complex(basis.psi_plus.x1, TEXT_SIG_DIGITS)
                    );
                }
                Err(e) => println!("legacy basis: error: {e}"),
            }
            match &corrected {
                Ok(basis) => {
                    println!("corrected basis:");
                    println!("  R+   = {}", fmt_complex(basis.r_plus, TEXT_SIG_DIGITS));
                    println!("  R-   = {}", fmt_complex(basis.r_minus, TEXT_SIG_DIGITS));
                    println!(
                        "  phi- = ({}, {})",
                        fmt_complex(basis.phi_minus.x0, TEXT_SIG_DIGITS),
                        fmt_complex(basis.phi_minus.x1, TEXT_SIG_DIGITS)
                    );
                    println!(
                        "  phi+ = ({}, {})",
                        fmt_complex(basis.phi_plus.x0, TEXT_SIG_DIGITS),
                        fmt_complex(basis.phi_plus.x1, TEXT_SIG_DIGITS)
                    );
                }
                Err(e) => println!("corrected basis: error: {e}"),
            }
            for w in &warnings {
                println!("warning: {w}");
            }
        }
        Format::Json => {
            let out = VectorsOut {
                params: p.into(),
                phase: spec.phase.as_str(),
                legacy: Section::from_result(legacy.map(|b| LegacyOut {
                    r: b.r.into(),
                    psi_minus: [b.psi_minus.x0.into(), b.psi_minus.x1.into()],
                    psi_plus: [b.psi_plus.x0.into(), b.psi_plus.x1.into()],
                })),
                corrected: Section::from_result(corrected.map(|b| CorrectedOut {
                    r_plus: b.r_plus.into(),
                    r_minus: b.r_minus.into(),
                    phi_minus: [b.phi_minus.x0.into(), b.phi_minus.x1.into()],
                    phi_plus: [b.phi_plus.x0.into(), b.phi_plus.x1.into()],
                    coalescent: b.coalescent,
                })),
                warnings,
            };
            print_json(&out);
        }
        Format::Csv => return usage_error("csv format is not available for vectors"),
    }
    0
}

// ---------------------------------------------------------------------------
// operators
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AntilinearOut {
    matrix: JsonMatrix,
    conjugates: bool,
}

impl From<AntilinearOp> for AntilinearOut {
    fn from(u: AntilinearOp) -> Self {
        Self {
            matrix: json_matrix(&u.m),
            conjugates: u.conjugates,
        }
    }
}

#[derive(Serialize)]
struct OperatorsOut {
    params: JsonParams,
    parity: JsonMatrix,
    time_reversal: AntilinearOut,
    pt: AntilinearOut,
    c: Section<JsonMatrix>,
    legacy_c: Section<JsonMatrix>,
    cpt: Section<AntilinearOut>,
}

fn print_matrix_text(m: &Mat2C) {
    println!(
        "  [ {}, {} ]",
        fmt_complex(m.m00, TEXT_SIG_DIGITS),
        fmt_complex(m.m01, TEXT_SIG_DIGITS)
    );
    println!(
        "  [ {}, {} ]",
        fmt_complex(m.m10, TEXT_SIG_DIGITS),
        fmt_complex(m.m11, TEXT_SIG_DIGITS)
    );
}

fn cmd_operators(p: &HamiltonianParams, format: Format) -> i32 {
    let c_op = c_operator(p);
    let legacy_c = legacy_c_operator(p);
    let cpt = cpt_operator(p);

    match format {
        Format::Text => {
            print_params_line(p);
            println!("P:");
            print_matrix_text(&parity());
            println!("T: antilinear, v -> M conj(v)");
            print_matrix_text(&time_reversal().m);
            println!("PT: antilinear, v -> M conj(v)");
            print_matrix_text(&pt_operator().m);
            match &c_op {
                Ok(c) => {
                    println!("C:");
                    print_matrix_text(c);
                }
                Err(e) => println!("C: error: {e}"),
            }
            match &legacy_c {
                Ok(cz) => {
                    println!("legacy C:");
                    print_matrix_text(cz);
                }
                Err(e) => println!("legacy C: error: {e}"),
            }
            match &cpt {
                Ok(u) => {
                    println!("CPT: antilinear, v -> M conj(v)");
                    print_matrix_text(&u.m);
                }
                Err(e) => println!("CPT: error: {e}"),
            }
        }
        Format::Json => {
            let out = OperatorsOut {
                params: p.into(),
                parity: json_matrix(&parity()),
                time_reversal: time_reversal().into(),
                pt: pt_operator().into(),
                c: Section::from_result(c_op.map(|m| json_matrix(&m))),
                legacy_c: Section::from_result(legacy_c.map(|m| json_matrix(&m))),
                cpt: Section::from_result(cpt.map(AntilinearOut::from)),
            };
            print_json(&out);
        }
        Format::Csv => return usage_error("csv format is not available for operators"),
    }
    0
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CheckOut {
    id: &'static str,
    kind: &'static str,
    residual: f64,
    threshold: f64,
    verdict: &'static str,
    note: String,
}

#[derive(Serialize)]
struct VerifyOut {
    params: JsonParams,
    phase: &'static str,
    checks: Vec<CheckOut>,
}

fn render_verify_text(result: &BatteryResult) {
    print_params_line(&result.params);
    println!("phase = {}", result.phase.as_str());
    println!(
        "{:<6} {:<15} {:<13} {:<13} {:<8} {:<9} note",
        "id", "kind", "residual", "threshold", "verdict", "expected"
    );
    for check in &result.checks {
        let expected = if check.verdict == Verdict::Skipped {
            "-".to_string()
        } else {
            expected_verdict(check.id).as_str().to_string()
        };
        let residual = if check.residual.is_nan() {
            "-".to_string()
        } else {
            fmt_sig(check.residual, TEXT_SIG_DIGITS)
        };
        let threshold = if check.threshold.is_nan() {
            "-".to_string()
        } else {
            fmt_sig(check.threshold, TEXT_SIG_DIGITS)
        };
        println!(
            "{:<6} {:<15} {:<13} {:<13} {:<8} {:<9} {}",
            check.id,
            check.kind.as_str(),
            residual,
            threshold,
            check.verdict.as_str(),
            expected,
            check.note
        );
    }
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let p = HamiltonianParams::new(args.params.a, args.params.b, args.params.c);
    if !p.all_finite() {
        return usage_error("parameters a, b, c must be finite");
    }
    if !(args.tol_eq.is_finite() && args.tol_eq > 0.0)
        || !(args.tol_ineq.is_finite() && args.tol_ineq > 0.0)
    {
        return usage_error("tolerances must be finite and positive");
    }

    let result = run_battery(&p, args.tol_eq, args.tol_ineq);
    let verdict = battery_verdict(&result);

    match args.params.format {
        Format::Text => {
            render_verify_text(&result);
            println!(
                "verdict: {}",
                if verdict == 0 {
                    "all checks match their expected outcomes"
                } else {
                    "MISMATCH against expected outcomes"
                }
            );
        }
        Format::Json => {
            let out = VerifyOut {
                params: (&result.params).into(),
                phase: result.phase.as_str(),
                checks: result
                    .checks
                    .iter()
                    .map(|c| CheckOut {
                        id: c.id,
                        kind: c.kind.as_str(),
                        residual: c.residual,
                        threshold: c.threshold,
                        verdict: c.verdict.as_str(),
                        note: c.note.clone(),
                    })
                    .collect(),
            };
            print_json(&out);
        }
        Format::Csv => {
            println!("id,kind,residual,threshold,verdict,note");
            for c in &result.checks {
                println!(
                    "{},{},{},{},{},\"{}\"",
                    c.id,
                    c.kind.as_str(),
                    fmt_machine(c.residual),
                    fmt_machine(c.threshold),
                    c.verdict.as_str(),
                    c.note
                );
            }
        }
    }
    verdict
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ScanRowOut {
    param: f64,
    re_e_minus: f64,
    im_e_minus: f64,
    re_e_plus: f64,
    im_e_plus: f64,
    phase: &'static str,
    comm_residual: Option<f64>,
}

impl From<&ScanRow> for ScanRowOut {
    fn from(row: &ScanRow) -> Self {
        Self {
            param: nonneg_zero(row.value),
            re_e_minus: nonneg_zero(row.e_minus.re),
            im_e_minus: nonneg_zero(row.e_minus.im),
            re_e_plus: nonneg_zero(row.e_plus.re),
            im_e_plus: nonneg_zero(row.e_plus.im),
            phase: row.phase.as_str(),
            comm_residual: row.comm_residual.map(nonneg_zero),
        }
    }
}

#[derive(Serialize)]
struct ExceptionalPointOut {
    param: &'static str,
    value: f64,
    discriminant: f64,
}

#[derive(Serialize)]
struct ScanOut {
    params: JsonParams,
    sweep: &'static str,
    rows: Vec<ScanRowOut>,
    exceptional_points: Vec<ExceptionalPointOut>,
}

fn cmd_scan(args: &ScanArgs) -> i32 {
    let p = HamiltonianParams::new(args.params.a, args.params.b, args.params.c);
    if !p.all_finite() {
        return usage_error("parameters a, b, c must be finite");
    }
    if !args.from.is_finite() || !args.to.is_finite() {
        return usage_error("scan range must be finite");
    }
    if args.steps < 2 {
        return usage_error("scan needs at least 2 steps");
    }
    if args.from >= args.to {
        return usage_error("scan range must satisfy from < to");
    }

    let output = run_scan(&p, args.sweep, args.from, args.to, args.steps);
    let sweep = args.sweep.as_str();

    match args.params.format {
        Format::Text => {
            println!(
                "params: a={} b={} c={} (sweeping {} from {} to {} in {} steps)",
                fmt_sig(p.a, TEXT_SIG_DIGITS),
                fmt_sig(p.b, TEXT_SIG_DIGITS),
                fmt_sig(p.c, TEXT_SIG_DIGITS),
                sweep,
                fmt_sig(args.from, TEXT_SIG_DIGITS),
                fmt_sig(args.to, TEXT_SIG_DIGITS),
                args.steps
            );
            println!(
                "{:<12} {:<20} {:<20} {:<12} comm_residual",
                sweep, "E-", "E+", "phase"
            );
            for row in &output.rows {
                let comm = match row.comm_residual {
                    Some(r) => fmt_sig(r, TEXT_SIG_DIGITS),
                    None => "n/a".to_string(),
                };
                println!(
                    "{:<12} {:<20} {:<20} {:<12} {}",
                    fmt_sig(row.value, TEXT_SIG_DIGITS),
                    fmt_complex(row.e_minus, TEXT_SIG_DIGITS),
                    fmt_complex(row.e_plus, TEXT_SIG_DIGITS),
                    row.phase.as_str(),
                    comm
                );
            }
            for ep in &output.exceptional_points {
                println!(
                    "exceptional point: {} = {} (c^2 - b^2 = {})",
                    sweep,
                    fmt_sig(ep.value, 12),
                    fmt_sig(ep.discriminant, TEXT_SIG_DIGITS)
                );
            }
        }
        Format::Json => {
            let out = ScanOut {
                params: (&p).into(),
                sweep,
                rows: output.rows.iter().map(ScanRowOut::from).collect(),
                exceptional_points: output
                    .exceptional_points
                    .iter()
                    .map(|ep| ExceptionalPointOut {
                        param: sweep,
                        value: ep.value,
                        discriminant: nonneg_zero(ep.discriminant),
                    })
                    .collect(),
            };
            print_json(&out);
        }
        Format::Csv => {
            println!("param,re_e_minus,im_e_minus,re_e_plus,im_e_plus,phase,comm_residual");
            for row in &output.rows {
                let out = ScanRowOut::from(row);
                println!(
                    "{},{},{},{},{},{},{}",
                    fmt_machine(out.param),
                    fmt_machine(out.re_e_minus),
                    fmt_machine(out.im_e_minus),
                    fmt_machine(out.re_e_plus),
                    fmt_machine(out.im_e_plus),
                    out.phase,
                    match out.comm_residual {
                        Some(r) => fmt_machine(r),
                        None => "nan".to_string(),
                    }
                );
            }
            for ep in &output.exceptional_points {
                println!(
                    "# exceptional_point param={} value={} discriminant={}",
                    sweep,
                    fmt_machine(ep.value),
                    fmt_machine(nonneg_zero(ep.discriminant))
                );
            }
        }
    }
    0
}

// ---------------------------------------------------------------------------
// shared output helpers
// ---------------------------------------------------------------------------

fn print_params_line(p: &HamiltonianParams) {
    println!(
        "params: a={} b={} c={}",
        fmt_sig(p.a, TEXT_SIG_DIGITS),
        fmt_sig(p.b, TEXT_SIG_DIGITS),
        fmt_sig(p.c, TEXT_SIG_DIGITS)
    );
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output structs always serialize")
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0, 6), "0");
        assert_eq!(fmt_sig(-0.0, 6), "0");
        assert_eq!(fmt_sig(4.0, 6), "4");
        assert_eq!(fmt_sig(-4.0, 6), "-4");
        assert_eq!(fmt_sig(100.0 / 3.0, 6), "33.3333");
        assert_eq!(fmt_sig(0.948_683_298_050_513_8, 6), "0.948683");
        assert_eq!(fmt_sig(1e-6, 6), "1e-6");
        assert_eq!(fmt_sig(0.000_123_456_789, 6), "0.000123457");
        assert_eq!(fmt_sig(1_234_567.0, 6), "1.23457e6");
        assert_eq!(fmt_sig(2.34375, 6), "2.34375");
        assert_eq!(fmt_sig(f64::NAN, 6), "nan");
    }

    #[test]
    fn complex_formatting() {
        let c = Complex64::new;
        assert_eq!(fmt_complex(c(0.0, 0.0), 6), "0");
        assert_eq!(fmt_complex(c(-4.0, 0.0), 6), "-4");
        assert_eq!(fmt_complex(c(0.0, 4.0), 6), "4i");
        assert_eq!(fmt_complex(c(0.0, -1.0), 6), "-i");
        assert_eq!(fmt_complex(c(0.6, 0.8), 6), "0.6+0.8i");
        assert_eq!(fmt_complex(c(1.25, -0.75), 6), "1.25-0.75i");
    }

    #[test]
    fn machine_formatting_round_trips() {
        for x in [0.06, -1.0 / 3.0, 1e-300, 33.333333333333336, 2.0f64.sqrt()] {
            assert_eq!(fmt_machine(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_machine(f64::NAN), "nan");
        assert_eq!(fmt_machine(-0.0), "0");
    }

    #[test]
    fn scan_locates_exact_grid_crossing() {
        let base = HamiltonianParams::new(0.0, 0.0, 1.0);
        let out = run_scan(&base, SweepParam::B, 0.0, 2.0, 201);
        assert_eq!(out.rows.len(), 201);
        assert_eq!(out.exceptional_points.len(), 1);
        assert!((out.exceptional_points[0].value - 1.0).abs() <= 1e-9);
        for row in &out.rows {
            if row.value < 1.0 {
                assert_eq!(row.e_minus.im, 0.0);
                assert_eq!(row.e_plus.im, 0.0);
                assert_eq!(row.phase, PTPhase::Unbroken);
            } else if row.value > 1.0 {
                assert!(row.e_plus.im > 0.0);
                assert!(row.e_minus.im < 0.0);
                assert_eq!(row.phase, PTPhase::Broken);
            } else {
                assert_eq!(row.phase, PTPhase::Exceptional);
            }
        }
    }

    #[test]
    fn scan_bisects_off_grid_crossing() {
        // 7 steps over [0, 2.1] put no grid point at b = 1.
        let base = HamiltonianParams::new(0.0, 0.0, 1.0);
        let out = run_scan(&base, SweepParam::B, 0.0, 2.1, 7);
        assert_eq!(out.exceptional_points.len(), 1);
        let ep = out.exceptional_points[0];
        assert!((ep.value - 1.0).abs() <= 1e-9, "found {}", ep.value);
        assert!(ep.discriminant.abs() <= SCAN_EP_TOL);
    }

    #[test]
    fn scan_of_a_has_no_crossing() {
        let base = HamiltonianParams::new(0.0, 3.0, 5.0);
        let out = run_scan(&base, SweepParam::A, -5.0, 5.0, 11);
        assert!(out.exceptional_points.is_empty());
        for row in &out.rows {
            assert_eq!(row.phase, PTPhase::Unbroken);
            assert!(row.comm_residual.unwrap() <= 1e-12);
        }
    }
}
