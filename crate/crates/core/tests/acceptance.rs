//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria 2-6 share one seeded 10^4-point sample with `b, c` in (0, 10]
//! and `|b - c| > 1e-3`, covering both phases; criterion 1 uses its own
//! 10^5-point sample over [-10, 10]^3.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;

use ptcheck::claims::{battery_verdict, run_battery, DEFAULT_TOL_EQ, DEFAULT_TOL_INEQ};
use ptcheck::cli::{run_scan, SweepParam};
use ptcheck::cxmat::{commutator, eigen_oracle, Mat2C};
use ptcheck::hamiltonian::{
    build_hamiltonian, corrected_vectors, eigen_residual, legacy_vectors, spectrum,
    HamiltonianParams, DEFAULT_PHASE_TOL,
};
use ptcheck::symmetry::{
    c_operator, cpt_operator, involution_check, legacy_c_operator, parity,
    pseudo_hermiticity_residual, pt_operator, reconstruct_parity, time_reversal,
    ConjugationConvention,
};

fn criterion(number: u32, name: &str, f: impl FnOnce() + std::panic::UnwindSafe) {
    match std::panic::catch_unwind(f) {
        Ok(()) => println!("criterion {number} ({name}): PASS"),
        Err(cause) => {
            println!("criterion {number} ({name}): FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// The shared sample for criteria 2-6.
fn positive_sample() -> Vec<HamiltonianParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let mut out = Vec::with_capacity(10_000);
    while out.len() < 10_000 {
        let a = rng.gen_range(-10.0..10.0);
        let b = 10.0 * open_unit(&mut rng);
        let c = 10.0 * open_unit(&mut rng);
        if (b - c).abs() > 1e-3 {
            out.push(HamiltonianParams::new(a, b, c));
        }
    }
    out
}

#[test]
fn criterion_1_oracle_equivalence() {
    criterion(1, "oracle equivalence of the closed-form spectrum", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE01);
        let mut checked = 0usize;
        while checked < 100_000 {
            let a = rng.gen_range(-10.0..10.0);
            let b = rng.gen_range(-10.0..10.0);
            let c = rng.gen_range(-10.0..10.0);
            let p = HamiltonianParams::new(a, b, c);
            if p.discriminant().abs() <= 1e-6 {
                continue;
            }
            let spec = spectrum(&p, DEFAULT_PHASE_TOL);
            let eig = eigen_oracle(&build_hamiltonian(&p));
            assert!(
                (spec.e_minus - eig.lambda1).norm() <= 1e-10 * (1.0 + eig.lambda1.norm()),
                "e_minus mismatch at {p:?}"
            );
            assert!(
                (spec.e_plus - eig.lambda2).norm() <= 1e-10 * (1.0 + eig.lambda2.norm()),
                "e_plus mismatch at {p:?}"
            );
            checked += 1;
        }
    });
}

#[test]
fn criterion_2_corrected_eigenvector_claim() {
    criterion(
        2,
        "corrected vectors are eigenvectors in both phases",
        || {
            for p in positive_sample() {
                let h = build_hamiltonian(&p);
                let bound = 1e-12 * (1.0 + h.frobenius_norm());
                let spec = spectrum(&p, DEFAULT_PHASE_TOL);
                let basis = corrected_vectors(&p).unwrap();
                let r_minus = eigen_residual(&h, &basis.phi_minus, spec.e_minus).unwrap();
                let r_plus = eigen_residual(&h, &basis.phi_plus, spec.e_plus).unwrap();
                assert!(
                    r_minus <= bound,
                    "phi- residual {r_minus} > {bound} at {p:?}"
                );
                assert!(r_plus <= bound, "phi+ residual {r_plus} > {bound} at {p:?}");
            }
        },
    );
}

#[test]
fn criterion_3_refutation_and_label_swap() {
    criterion(
        3,
        "legacy vectors fail their labels and carry the swapped ones",
        || {
            for p in positive_sample() {
                let h = build_hamiltonian(&p);
                let bound = 1e-12 * (1.0 + h.frobenius_norm());
                let spec = spectrum(&p, DEFAULT_PHASE_TOL);
                let basis = legacy_vectors(&p).unwrap();
                let labeled_minus = eigen_residual(&h, &basis.psi_minus, spec.e_minus).unwrap();
                let labeled_plus = eigen_residual(&h, &basis.psi_plus, spec.e_plus).unwrap();
                assert!(
                    labeled_minus >= 1e-6,
                    "psi-/E- residual {labeled_minus} at {p:?}"
                );
                assert!(
                    labeled_plus >= 1e-6,
                    "psi+/E+ residual {labeled_plus} at {p:?}"
                );
                let swap_minus = eigen_residual(&h, &basis.psi_minus, spec.e_plus).unwrap();
                let swap_plus = eigen_residual(&h, &basis.psi_plus, spec.e_minus).unwrap();
                assert!(
                    swap_minus <= bound,
                    "psi-/E+ residual {swap_minus} at {p:?}"
                );
                assert!(swap_plus <= bound, "psi+/E- residual {swap_plus} at {p:?}");
            }
        },
    );
}

#[test]
fn criterion_4_commutation_claims() {
    criterion(
        4,
        "commutation of C and non-commutation of the legacy C",
        || {
            for p in positive_sample() {
                let h = build_hamiltonian(&p);
                let h_scale = 1.0 + h.frobenius_norm();

                let c_op = c_operator(&p).unwrap();
                let comm = commutator(&h, &c_op).frobenius_norm();
                let bound = 1e-12 * h_scale * (1.0 + c_op.frobenius_norm());
                assert!(comm <= bound, "|[H,C]| = {comm} > {bound} at {p:?}");

                let cz = legacy_c_operator(&p).unwrap();
                let direct = commutator(&h, &cz);
                if p.c > 1e-3 {
                    assert!(
                        direct.frobenius_norm() >= 1e-6,
                        "|[H,Cz]| = {} at {p:?}",
                        direct.frobenius_norm()
                    );
                }

                let r = legacy_vectors(&p).unwrap().r;
                let b = c64(p.b, 0.0);
                let two_i_c = c64(0.0, 2.0 * p.c);
                let closed = Mat2C::new(
                    -b * (r + r.inv()),
                    two_i_c / r,
                    two_i_c * r,
                    b * (r + r.inv()),
                );
                let form_bound = 1e-12 * h_scale * (1.0 + cz.frobenius_norm());
                let deviation = direct.sub(&closed).frobenius_norm();
                assert!(
                    deviation <= form_bound,
                    "closed-form gap {deviation} at {p:?}"
                );
            }
        },
    );
}

#[test]
fn criterion_5_involution_and_c_spectrum() {
    criterion(
        5,
        "C squares to the identity with eigenvalues -1 and +1",
        || {
            for p in positive_sample() {
                let c_op = c_operator(&p).unwrap();
                let c_scale = 1.0 + c_op.frobenius_norm();
                let rep = involution_check(&c_op);
                assert!(
                    rep.square_residual <= 1e-12 * c_scale * c_scale,
                    "scaled square residual {} at {p:?}",
                    rep.square_residual
                );
                assert!(
                    rep.square_residual <= 1e-10,
                    "square residual {} above battery tolerance at {p:?}",
                    rep.square_residual
                );
                assert!(
                    (rep.eigenvalues.0 - c64(-1.0, 0.0)).norm() <= 1e-10,
                    "low eigenvalue {} at {p:?}",
                    rep.eigenvalues.0
                );
                assert!(
                    (rep.eigenvalues.1 - c64(1.0, 0.0)).norm() <= 1e-10,
                    "high eigenvalue {} at {p:?}",
                    rep.eigenvalues.1
                );
            }
        },
    );
}

#[test]
fn criterion_6_p_t_pt_cpt_structure() {
    criterion(6, "P/T/PT/CPT structural identities", || {
        let p_mat = parity();
        assert_eq!(p_mat.mul(&p_mat), Mat2C::identity());
        let t = time_reversal();
        let t_squared = t.compose(&t);
        assert_eq!(t_squared.m, Mat2C::identity());
        assert!(!t_squared.conjugates);
        let pt = pt_operator();
        let pt_squared = pt.compose(&pt);
        assert_eq!(pt_squared.m, Mat2C::identity());
        assert!(!pt_squared.conjugates);

        for p in positive_sample() {
            let h = build_hamiltonian(&p);
            let h_scale = 1.0 + h.frobenius_norm();

            let psh = pseudo_hermiticity_residual(&h, &p_mat).unwrap();
            assert!(psh <= 1e-13, "|PHP^-1 - H^dag| = {psh} at {p:?}");

            let pti = p_mat.mul(&h.conj()).mul(&p_mat).sub(&h).frobenius_norm();
            assert!(pti <= 1e-13, "|P conj(H) P - H| = {pti} at {p:?}");

            let u = cpt_operator(&p).unwrap();
            let cpt_res = u.conjugate_matrix(&h).unwrap().sub(&h).frobenius_norm();
            let bound = 1e-12 * h_scale * (1.0 + u.m.frobenius_norm());
            assert!(
                cpt_res <= bound,
                "CPT residual {cpt_res} > {bound} at {p:?}"
            );
        }
    });
}

#[test]
fn criterion_7_documented_discrepancies() {
    criterion(7, "documented discrepancies reproduce at (0,3,5)", || {
        let p = HamiltonianParams::new(0.0, 3.0, 5.0);
        let result = run_battery(&p, DEFAULT_TOL_EQ, DEFAULT_TOL_INEQ);

        let eq9l = result.checks.iter().find(|c| c.id == "EQ9L").unwrap();
        assert!(eq9l.residual <= 1e-13, "EQ9L residual {}", eq9l.residual);

        let (reconstructed, residual) =
            reconstruct_parity(&p, ConjugationConvention::Hermitian).unwrap();
        let expected = Mat2C::new(
            c64(2.65625, 0.0),
            c64(0.0, -2.34375),
            c64(0.0, -2.34375),
            c64(-2.65625, 0.0),
        );
        assert!(
            reconstructed.sub(&expected).frobenius_norm() <= 1e-12,
            "reconstruction {reconstructed:?}"
        );
        assert!(residual > 1.0, "reconstruction residual {residual}");

        assert_eq!(battery_verdict(&result), 0);
    });
}

#[test]
fn criterion_8_exceptional_point_scan() {
    criterion(8, "scan locates the phase crossing at b = 1", || {
        let base = HamiltonianParams::new(0.0, 0.0, 1.0);
        let out = run_scan(&base, SweepParam::B, 0.0, 2.0, 201);
        assert_eq!(out.rows.len(), 201);
        assert_eq!(out.exceptional_points.len(), 1);
        let ep = out.exceptional_points[0];
        assert!((ep.value - 1.0).abs() <= 1e-9, "crossing at {}", ep.value);
        for row in &out.rows {
            if row.value < 1.0 {
                assert_eq!(row.e_minus.im, 0.0, "row {}", row.value);
                assert_eq!(row.e_plus.im, 0.0, "row {}", row.value);
            } else if row.value > 1.0 {
                assert!(row.e_minus.im.abs() > 0.0, "row {}", row.value);
                assert!(row.e_plus.im.abs() > 0.0, "row {}", row.value);
            }
        }
    });
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let output = Command::new(env!("CARGO_BIN_EXE_ptcheck"))
        .args(args)
        .output()
        .expect("binary runs");
    (output.status.code().expect("exit code"), output.stdout)
}

fn assert_golden(args: &[&str], expected_exit: i32, golden: &str) {
    let (code, stdout) = run_cli(args);
    assert_eq!(code, expected_exit, "exit code for {args:?}");
    let stdout = String::from_utf8(stdout).expect("utf-8 output");
    assert_eq!(stdout, golden, "stdout mismatch for {args:?}");
}

#[test]
fn criterion_9_cli_contract() {
    criterion(9, "CLI golden outputs and exit codes", || {
        assert_golden(
            &["verify", "--a", "0", "--b", "3", "--c", "5"],
            0,
            include_str!("golden/verify_0_3_5.txt"),
        );
        assert_golden(
            &[
                "verify", "--a", "0", "--b", "3", "--c", "5", "--format", "json",
            ],
            0,
            include_str!("golden/verify_0_3_5.json"),
        );
        assert_golden(
            &[
                "verify", "--a", "0", "--b", "3", "--c", "5", "--format", "csv",
            ],
            0,
            include_str!("golden/verify_0_3_5.csv"),
        );
        assert_golden(
            &["verify", "--a", "0", "--b", "2", "--c", "2"],
            0,
            include_str!("golden/verify_0_2_2.txt"),
        );
        assert_golden(
            &[
                "verify", "--a", "0", "--b", "2", "--c", "2", "--format", "json",
            ],
            0,
            include_str!("golden/verify_0_2_2.json"),
        );
        assert_golden(
            &[
                "verify", "--a", "0", "--b", "2", "--c", "2", "--format", "csv",
            ],
            0,
            include_str!("golden/verify_0_2_2.csv"),
        );
        assert_golden(
            &["verify", "--a", "0", "--b", "0", "--c", "5"],
            0,
            include_str!("golden/verify_0_0_5.txt"),
        );
        assert_golden(
            &[
                "verify", "--a", "0", "--b", "0", "--c", "5", "--format", "json",
            ],
            0,
            include_str!("golden/verify_0_0_5.json"),
        );
        assert_golden(
            &[
                "verify", "--a", "0", "--b", "0", "--c", "5", "--format", "csv",
            ],
            0,
            include_str!("golden/verify_0_0_5.csv"),
        );

        // Exit-code contract: 1 on adjudication mismatch, 2 on usage errors.
        let (code, _) = run_cli(&[
            "verify", "--a", "0", "--b", "3", "--c", "5", "--tol-eq", "1e-20",
        ]);
        assert_eq!(code, 1);
        let (code, _) = run_cli(&["spectrum", "--b", "3", "--c", "5"]);
        assert_eq!(code, 2);
        let (code, _) = run_cli(&["spectrum", "--a", "nan", "--b", "3", "--c", "5"]);
        assert_eq!(code, 2);
        let (code, _) = run_cli(&[
            "scan", "--a", "0", "--b", "0", "--c", "1", "--sweep", "b", "--from", "0", "--to", "2",
            "--steps", "1",
        ]);
        assert_eq!(code, 2);

        // Determinism: identical invocations give identical bytes.
        let first = run_cli(&[
            "verify", "--a", "0", "--b", "3", "--c", "5", "--format", "json",
        ]);
        let second = run_cli(&[
            "verify", "--a", "0", "--b", "3", "--c", "5", "--format", "json",
        ]);
        assert_eq!(first, second);
    });
}
