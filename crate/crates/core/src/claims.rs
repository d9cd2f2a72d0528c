//! The verification battery: a fixed catalog of equality and inequality
//! checks over the model family, each reduced to a residual with a threshold
//! and adjudicated against the expected outcome recorded for it.
//!
//! Three catalog entries (EQ9L, EQ17H, EQ17T) are *expected to fail*: they
//! are reproducible discrepancies the battery documents rather than defects
//! in this crate. `battery_verdict` is zero exactly when every check that ran
//! landed on its expected side.

use num_complex::Complex64;

use crate::cxmat::{commutator, Vec2C};
use crate::hamiltonian::{
    build_hamiltonian, corrected_vectors, eigen_residual, legacy_vectors, spectrum,
    HamiltonianParams, PTPhase, DEFAULT_PHASE_TOL,
};
use crate::symmetry::{
    c_operator, cpt_operator, involution_check, legacy_c_operator, parity,
    pseudo_hermiticity_residual, pt_operator, reconstruct_parity, time_reversal,
    ConjugationConvention, EXCEPTIONAL_POINT_TOL,
};

/// Default threshold for equality checks (pass when residual <= threshold,
/// after the per-check scale factor).
pub const DEFAULT_TOL_EQ: f64 = 1e-10;
/// Default threshold for inequality checks (pass when residual >= threshold).
pub const DEFAULT_TOL_INEQ: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Equality,
    Inequality,
    NotApplicable,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Equality => "equality",
            CheckKind::Inequality => "inequality",
            CheckKind::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

/// One adjudicated catalog entry. Skipped entries carry NaN residuals and
/// thresholds.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: &'static str,
    pub kind: CheckKind,
    pub residual: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub note: String,
}

impl CheckReport {
    fn equality(id: &'static str, residual: f64, threshold: f64, note: impl Into<String>) -> Self {
        let verdict = if residual <= threshold {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            id,
            kind: CheckKind::Equality,
            residual,
            threshold,
            verdict,
            note: note.into(),
        }
    }

    fn inequality(
        id: &'static str,
        residual: f64,
        threshold: f64,
        note: impl Into<String>,
    ) -> Self {
        let verdict = if residual >= threshold {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            id,
            kind: CheckKind::Inequality,
            residual,
            threshold,
            verdict,
            note: note.into(),
        }
    }

    fn skipped(id: &'static str, reason: impl Into<String>) -> Self {
        Self {
            id,
            kind: CheckKind::NotApplicable,
            residual: f64::NAN,
            threshold: f64::NAN,
            verdict: Verdict::Skipped,
            note: reason.into(),
        }
    }
}

/// One battery run at a single parameter point.
#[derive(Debug, Clone)]
pub struct BatteryResult {
    pub params: HamiltonianParams,
    pub phase: PTPhase,
    pub checks: Vec<CheckReport>,
}

/// The outcome each catalog entry is expected to produce when it runs.
/// EQ9L's literal sign reading is an identity (the inequality fails), and
/// neither bra reading of the parity reconstruction reproduces `diag(-1,1)`.
pub fn expected_verdict(id: &str) -> Verdict {
    match id {
        "EQ9L" | "EQ17H" | "EQ17T" => Verdict::Fail,
        _ => Verdict::Pass,
    }
}

const SKIP_B_ZERO: &str = "skipped: b = 0 (legacy vectors undefined)";
const SKIP_EP: &str = "skipped: exceptional point (eigenvalues coalesce)";
const SKIP_C_ZERO: &str = "skipped: c = 0";
const SKIP_DOMAIN: &str = "skipped: outside analytic domain (b >= 0 and c > 0 required)";

/// Run the full catalog at one parameter point. Degenerate parameters route
/// the affected entries to `Skipped`; nothing here returns an error.
pub fn run_battery(p: &HamiltonianParams, tol_eq: f64, tol_ineq: f64) -> BatteryResult {
    let h = build_hamiltonian(p);
    let h_scale = 1.0 + h.frobenius_norm();
    let spec = spectrum(p, DEFAULT_PHASE_TOL);
    let at_ep = p.discriminant().abs() <= EXCEPTIONAL_POINT_TOL * (p.b * p.b + p.c * p.c);
    let legacy = if p.b != 0.0 {
        legacy_vectors(p).ok()
    } else {
        None
    };
    let s = spec.s;

    let mut checks: Vec<CheckReport> = Vec::with_capacity(20);

    // EQ6 / EQ7 / EQ8 / EQ8L / EQ9L / EQ9C: the legacy-family claims compare
    // against the two distinct eigenvalue labels, so they need b != 0 and a
    // spectrum that has not coalesced.
    let legacy_skip = if p.b == 0.0 {
        Some(SKIP_B_ZERO)
    } else if at_ep {
        Some(SKIP_EP)
    } else {
        None
    };

    match (&legacy, legacy_skip) {
        (Some(basis), None) => {
            let b_over_r = Complex64::new(p.b, 0.0) / basis.r;
            let c = Complex64::new(p.c, 0.0);
            let res_minus = eigen_residual(&h, &basis.psi_minus, spec.e_minus).unwrap();
            let res_plus = eigen_residual(&h, &basis.psi_plus, spec.e_plus).unwrap();
            checks.push(CheckReport::inequality(
                "EQ6",
                res_minus,
                tol_ineq,
                "H psi- vs E- psi-: labels are swapped, residual stays large",
            ));
            checks.push(CheckReport::inequality(
                "EQ7",
                (b_over_r + c - s).norm(),
                tol_ineq,
                "scalar form: b/r + c differs from s",
            ));
            checks.push(CheckReport::inequality(
                "EQ8",
                res_plus,
                tol_ineq,
                "H psi+ vs E+ psi+: corrected reading of the duplicated claim",
            ));
            checks.push(CheckReport::inequality(
                "EQ8L",
                res_minus,
                tol_ineq,
                "literal reading: duplicate of EQ6",
            ));
            checks.push(CheckReport::inequality(
                "EQ9L",
                (b_over_r - c + s).norm(),
                tol_ineq,
                "literal sign: b/r - c equals -s identically, inequality expected to fail",
            ));
            checks.push(CheckReport::inequality(
                "EQ9C",
                (b_over_r - c - s).norm(),
                tol_ineq,
                "corrected sign: b/r - c differs from +s",
            ));
        }
        (_, reason) => {
            let reason = reason.unwrap_or(SKIP_B_ZERO);
            for id in ["EQ6", "EQ7", "EQ8", "EQ8L", "EQ9L", "EQ9C"] {
                checks.push(CheckReport::skipped(id, reason));
            }
        }
    }

    // SWAP-: the legacy vectors are genuine eigenvectors with swapped labels;
    // this holds for any sign of the parameters and also at the exceptional
    // point, so only b = 0 skips it.
    match &legacy {
        Some(basis) => {
            let res_swap_minus = eigen_residual(&h, &basis.psi_minus, spec.e_plus).unwrap();
            let res_swap_plus = eigen_residual(&h, &basis.psi_plus, spec.e_minus).unwrap();
            checks.push(CheckReport::equality(
                "SWAP-",
                res_swap_minus,
                tol_eq * h_scale,
                "psi- is the E+ eigenvector",
            ));
            checks.push(CheckReport::equality(
                "SWAP+",
                res_swap_plus,
                tol_eq * h_scale,
                "psi+ is the E- eigenvector",
            ));
        }
        None => {
            checks.push(CheckReport::skipped("SWAP-", SKIP_B_ZERO));
            checks.push(CheckReport::skipped("SWAP+", SKIP_B_ZERO));
        }
    }

    // EQ12: the corrected vectors are eigenvectors on the closed-form domain
    // b >= 0, c > 0 (the b = 0 boundary is the exactly diagonal case).
    if p.c > 0.0 && p.b >= 0.0 {
        let basis = corrected_vectors(p).unwrap();
        let warn = if basis.coalescent {
            "; warning: eigenvectors coalesce (s = 0)"
        } else {
            ""
        };
        let res_minus = eigen_residual(&h, &basis.phi_minus, spec.e_minus).unwrap();
        let res_plus = eigen_residual(&h, &basis.phi_plus, spec.e_plus).unwrap();
        checks.push(CheckReport::equality(
            "EQ12-",
            res_minus,
            tol_eq * h_scale,
            format!("H phi- = E- phi-{warn}"),
        ));
        checks.push(CheckReport::equality(
            "EQ12+",
            res_plus,
            tol_eq * h_scale,
            format!("H phi+ = E+ phi+{warn}"),
        ));
    } else {
        let reason = if p.c == 0.0 { SKIP_C_ZERO } else { SKIP_DOMAIN };
        checks.push(CheckReport::skipped("EQ12-", reason));
        checks.push(CheckReport::skipped("EQ12+", reason));
    }

    // EQ14: the legacy operator genuinely fails to commute, except at c = 0
    // where the commutator vanishes identically, and away from b = 0 and the
    // exceptional point where the family degenerates.
    if p.b == 0.0 {
        checks.push(CheckReport::skipped("EQ14", SKIP_B_ZERO));
    } else if p.c == 0.0 {
        checks.push(CheckReport::skipped(
            "EQ14",
            "skipped: c = 0 (commutator with the legacy operator vanishes identically)",
        ));
    } else if at_ep {
        checks.push(CheckReport::skipped("EQ14", SKIP_EP));
    } else {
        let cz = legacy_c_operator(p).unwrap();
        checks.push(CheckReport::inequality(
            "EQ14",
            commutator(&h, &cz).frobenius_norm(),
            tol_ineq,
            "|[H, C_legacy]| expected nonzero",
        ));
    }

    // EQ16 / EQ17 / C2 / LAMBDA / CPT all need the commuting C operator,
    // which diverges at the exceptional point.
    let c_op = if at_ep { None } else { c_operator(p).ok() };

    match &c_op {
        Some(c) => {
            let c_scale = 1.0 + c.frobenius_norm();
            checks.push(CheckReport::equality(
                "EQ16",
                commutator(&h, c).frobenius_norm(),
                tol_eq * h_scale * c_scale,
                "|[H, C]| expected zero",
            ));
            for (id, conv, label) in [
                ("EQ17H", ConjugationConvention::Hermitian, "Hermitian"),
                ("EQ17T", ConjugationConvention::Transpose, "transpose"),
            ] {
                match reconstruct_parity(p, conv) {
                    Ok((_, residual)) => checks.push(CheckReport::equality(
                        id,
                        residual,
                        tol_eq,
                        format!(
                            "parity reconstruction, {label} bra: known not to reproduce diag(-1,1)"
                        ),
                    )),
                    Err(e) => checks.push(CheckReport::skipped(id, format!("skipped: {e}"))),
                }
            }
        }
        None => {
            for id in ["EQ16", "EQ17H", "EQ17T"] {
                checks.push(CheckReport::skipped(id, SKIP_EP));
            }
        }
    }

    // EQ19: antilinearity of T on a fixed probe vector.
    let probe = Vec2C::new(Complex64::new(1.0, 2.0), Complex64::new(3.0, -1.0))
        .normalized()
        .unwrap();
    let t = time_reversal();
    let minus_i = Complex64::new(0.0, -1.0);
    let i = Complex64::new(0.0, 1.0);
    let eq19 = t
        .apply(&probe.scale(minus_i))
        .sub(&t.apply(&probe).scale(i))
        .norm();
    checks.push(CheckReport::equality(
        "EQ19",
        eq19,
        tol_eq,
        "antilinearity probe |T(-i v) - i T(v)|",
    ));

    match &c_op {
        Some(c) => {
            let c_scale = 1.0 + c.frobenius_norm();
            let rep = involution_check(c);
            checks.push(CheckReport::equality(
                "C2",
                rep.square_residual,
                tol_eq * c_scale * c_scale,
                "|C^2 - I|",
            ));
            let lambda_res = (rep.eigenvalues.0 + Complex64::new(1.0, 0.0)).norm()
                + (rep.eigenvalues.1 - Complex64::new(1.0, 0.0)).norm();
            checks.push(CheckReport::equality(
                "LAMBDA",
                lambda_res,
                tol_eq * c_scale,
                "eigenvalues of C are -1 and +1",
            ));
        }
        None => {
            checks.push(CheckReport::skipped("C2", SKIP_EP));
            checks.push(CheckReport::skipped("LAMBDA", SKIP_EP));
        }
    }

    checks.push(CheckReport::equality(
        "PSH",
        pseudo_hermiticity_residual(&h, &parity()).unwrap(),
        tol_eq * h_scale,
        "|P H P^-1 - H^dagger|",
    ));

    let pti = pt_operator()
        .conjugate_matrix(&h)
        .unwrap()
        .sub(&h)
        .frobenius_norm();
    checks.push(CheckReport::equality(
        "PTI",
        pti,
        tol_eq * h_scale,
        "|P conj(H) P - H|",
    ));

    match &c_op {
        Some(_) => match cpt_operator(p).and_then(|u| {
            let m_scale = 1.0 + u.m.frobenius_norm();
            u.conjugate_matrix(&h).map(|t| (t, m_scale))
        }) {
            Ok((transformed, m_scale)) => {
                checks.push(CheckReport::equality(
                    "CPT",
                    transformed.sub(&h).frobenius_norm(),
                    tol_eq * h_scale * m_scale,
                    "|CPT H CPT^-1 - H|",
                ));
            }
            Err(e) => checks.push(CheckReport::skipped("CPT", format!("skipped: {e}"))),
        },
        None => checks.push(CheckReport::skipped("CPT", SKIP_EP)),
    }

    BatteryResult {
        params: *p,
        phase: spec.phase,
        checks,
    }
}

/// Exit-code semantics: 0 when every check that ran matches its expected
/// verdict, 1 otherwise. Skipped entries never count against the verdict.
pub fn battery_verdict(result: &BatteryResult) -> i32 {
    let all_expected = result.checks.iter().all(|check| {
        check.verdict == Verdict::Skipped || check.verdict == expected_verdict(check.id)
    });
    if all_expected {
        0
    } else {
        1
    }
}
