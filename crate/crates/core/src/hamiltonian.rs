//! The two-level model family: `H(a,b,c) = [[a-c, bi], [bi, a+c]]` with its
//! closed-form spectrum, the two eigenvector parametrizations kept by this
//! crate, and the phase classification of the spectrum.

use num_complex::Complex64;

use crate::cxmat::{Mat2C, Vec2C};
use crate::error::ModelError;

/// Default absolute tolerance on `c^2 - b^2` for phase classification.
pub const DEFAULT_PHASE_TOL: f64 = 1e-12;

/// The real parameter triple `(a, b, c)` of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HamiltonianParams {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn all_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }

    /// The closed-form eigenvector families assume `b > 0` and `c > 0`; for
    /// other signs the principal square roots break the sign relations and
    /// the corrected vectors stop being eigenvectors.
    pub fn in_analytic_domain(&self) -> bool {
        self.b > 0.0 && self.c > 0.0
    }

    /// `c^2 - b^2`, the quantity whose sign separates the phases.
    pub fn discriminant(&self) -> f64 {
        self.c * self.c - self.b * self.b
    }
}

/// Reality class of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PTPhase {
    /// `c^2 - b^2 > tol`: both eigenvalues real.
    Unbroken,
    /// `c^2 - b^2 < -tol`: complex-conjugate eigenvalue pair.
    Broken,
    /// `|c^2 - b^2| <= tol`: eigenvalues coalesce.
    Exceptional,
}

impl PTPhase {
    pub fn classify(disc: f64, tol: f64) -> Self {
        if disc > tol {
            PTPhase::Unbroken
        } else if disc < -tol {
            PTPhase::Broken
        } else {
            PTPhase::Exceptional
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PTPhase::Unbroken => "unbroken",
            PTPhase::Broken => "broken",
            PTPhase::Exceptional => "exceptional",
        }
    }
}

/// Closed-form spectrum of `H(a,b,c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    /// Principal square root of `c^2 - b^2`.
    pub s: Complex64,
    /// `a - s`.
    pub e_minus: Complex64,
    /// `a + s`.
    pub e_plus: Complex64,
    pub phase: PTPhase,
}

/// The earlier eigenvector family `psi_- = (1, -ir)`, `psi_+ = (1, -i/r)`
/// with `r = (c + s)/b`. Kept verbatim so the verification battery can
/// adjudicate the relations it satisfies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegacyBasis {
    pub r: Complex64,
    pub psi_minus: Vec2C,
    pub psi_plus: Vec2C,
}

/// The corrected eigenvector family `phi_- = (sqrt(R+), -i sqrt(R-))`,
/// `phi_+ = (i sqrt(R-), sqrt(R+))` with `R± = (c ± s)/(2c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectedBasis {
    pub r_plus: Complex64,
    pub r_minus: Complex64,
    pub phi_minus: Vec2C,
    pub phi_plus: Vec2C,
    /// Set when `s = 0`: the two vectors coalesce (`phi_+ = i phi_-`).
    pub coalescent: bool,
}

/// `[[a-c, bi], [bi, a+c]]`.
pub fn build_hamiltonian(p: &HamiltonianParams) -> Mat2C {
    Mat2C::new(
        Complex64::new(p.a - p.c, 0.0),
        Complex64::new(0.0, p.b),
        Complex64::new(0.0, p.b),
        Complex64::new(p.a + p.c, 0.0),
    )
}

/// Principal square root of `c^2 - b^2`: real and non-negative in the
/// unbroken phase, positive-imaginary in the broken phase, zero at the
/// exceptional point.
pub fn discriminant_root(p: &HamiltonianParams) -> Complex64 {
    Complex64::new(p.discriminant(), 0.0).sqrt()
}

/// Closed-form eigenvalues `E∓ = a ∓ s` with the phase classified against
/// `tol`. The pair is ordered by `(re, im)` ascending by construction.
pub fn spectrum(p: &HamiltonianParams, tol: f64) -> Spectrum {
    let s = discriminant_root(p);
    let a = Complex64::new(p.a, 0.0);
    Spectrum {
        s,
        e_minus: a - s,
        e_plus: a + s,
        phase: PTPhase::classify(p.discriminant(), tol),
    }
}

/// Legacy vectors; `r` has denominator `b`, so `b = 0` is an error.
pub fn legacy_vectors(p: &HamiltonianParams) -> Result<LegacyBasis, ModelError> {
    if p.b == 0.0 {
        return Err(ModelError::DegenerateParameter("b = 0, r is undefined"));
    }
    let s = discriminant_root(p);
    let r = (Complex64::new(p.c, 0.0) + s) / Complex64::new(p.b, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let minus_i = Complex64::new(0.0, -1.0);
    Ok(LegacyBasis {
        r,
        psi_minus: Vec2C::new(one, minus_i * r),
        psi_plus: Vec2C::new(one, minus_i / r),
    })
}

/// Corrected vectors; `R±` has denominator `2c`, so `c = 0` is an error.
/// At the exceptional point the vectors remain finite but coalesce, which is
/// reported through the `coalescent` flag rather than an error.
pub fn corrected_vectors(p: &HamiltonianParams) -> Result<CorrectedBasis, ModelError> {
    if p.c == 0.0 {
        return Err(ModelError::DegenerateParameter("c = 0, R± is undefined"));
    }
    let s = discriminant_root(p);
    let two_c = Complex64::new(2.0 * p.c, 0.0);
    let c = Complex64::new(p.c, 0.0);
    let r_plus = (c + s) / two_c;
    let r_minus = (c - s) / two_c;
    let sq_plus = r_plus.sqrt();
    let sq_minus = r_minus.sqrt();
    let i = Complex64::new(0.0, 1.0);
    Ok(CorrectedBasis {
        r_plus,
        r_minus,
        phi_minus: Vec2C::new(sq_plus, -i * sq_minus),
        phi_plus: Vec2C::new(i * sq_minus, sq_plus),
        coalescent: s.norm() == 0.0,
    })
}

/// Relative eigen-residual `|H v - lambda v| / |v|`.
pub fn eigen_residual(h: &Mat2C, v: &Vec2C, lambda: Complex64) -> Result<f64, ModelError> {
    let den = v.norm_sqr();
    if den == 0.0 {
        return Err(ModelError::ZeroVector);
    }
    let num = h.mul_vec(v).sub(&v.scale(lambda)).norm_sqr();
    Ok((num / den).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cxmat::eigen_oracle;
    use approx::assert_abs_diff_eq;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hamiltonian_entries() {
        let h = build_hamiltonian(&HamiltonianParams::new(0.0, 3.0, 5.0));
        assert_eq!(h.m00, c64(-5.0, 0.0));
        assert_eq!(h.m01, c64(0.0, 3.0));
        assert_eq!(h.m10, c64(0.0, 3.0));
        assert_eq!(h.m11, c64(5.0, 0.0));

        let d = build_hamiltonian(&HamiltonianParams::new(1.0, 0.0, 2.0));
        assert_eq!(d, Mat2C::diag(c64(-1.0, 0.0), c64(3.0, 0.0)));

        let e = build_hamiltonian(&HamiltonianParams::new(0.0, 2.0, 2.0));
        assert_eq!(e.m00, c64(-2.0, 0.0));
        assert_eq!(e.m01, c64(0.0, 2.0));
    }

    #[test]
    fn discriminant_root_branches() {
        assert_eq!(
            discriminant_root(&HamiltonianParams::new(0.0, 3.0, 5.0)),
            c64(4.0, 0.0)
        );
        assert_eq!(
            discriminant_root(&HamiltonianParams::new(0.0, 5.0, 3.0)),
            c64(0.0, 4.0)
        );
        assert_eq!(
            discriminant_root(&HamiltonianParams::new(0.0, 2.0, 2.0)),
            c64(0.0, 0.0)
        );
    }

    #[test]
    fn spectrum_agrees_with_oracle() {
        for (a, b, c, em, ep, phase) in [
            (
                0.0,
                3.0,
                5.0,
                c64(-4.0, 0.0),
                c64(4.0, 0.0),
                PTPhase::Unbroken,
            ),
            (
                1.0,
                3.0,
                5.0,
                c64(-3.0, 0.0),
                c64(5.0, 0.0),
                PTPhase::Unbroken,
            ),
            (
                0.0,
                5.0,
                3.0,
                c64(0.0, -4.0),
                c64(0.0, 4.0),
                PTPhase::Broken,
            ),
        ] {
            let p = HamiltonianParams::new(a, b, c);
            let sp = spectrum(&p, DEFAULT_PHASE_TOL);
            assert_eq!(sp.e_minus, em);
            assert_eq!(sp.e_plus, ep);
            assert_eq!(sp.phase, phase);

            let e = eigen_oracle(&build_hamiltonian(&p));
            assert!((sp.e_minus - e.lambda1).norm() <= 1e-10 * (1.0 + e.lambda1.norm()));
            assert!((sp.e_plus - e.lambda2).norm() <= 1e-10 * (1.0 + e.lambda2.norm()));
        }
    }

    #[test]
    fn corrected_vectors_reference_point() {
        let basis = corrected_vectors(&HamiltonianParams::new(0.0, 3.0, 5.0)).unwrap();
        assert_abs_diff_eq!(basis.r_plus.re, 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(basis.r_minus.re, 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(
            basis.phi_minus.x0.re,
            0.948_683_298_050_513_8,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            basis.phi_minus.x1.im,
            -0.316_227_766_016_837_94,
            epsilon = 1e-12
        );
        assert!(!basis.coalescent);
    }

    #[test]
    fn corrected_vectors_diagonal_case() {
        // b = 0: R+ = 1, R- = 0, phi_- = (1, 0) with eigenvalue a - c.
        let p = HamiltonianParams::new(2.0, 0.0, 5.0);
        let basis = corrected_vectors(&p).unwrap();
        assert_eq!(basis.r_plus, c64(1.0, 0.0));
        assert_eq!(basis.r_minus, c64(0.0, 0.0));
        assert_eq!(basis.phi_minus, Vec2C::new(c64(1.0, 0.0), c64(0.0, 0.0)));
        let h = build_hamiltonian(&p);
        let res = eigen_residual(&h, &basis.phi_minus, c64(p.a - p.c, 0.0)).unwrap();
        assert_eq!(res, 0.0);
    }

    #[test]
    fn corrected_vectors_coalesce_at_exceptional_point() {
        let basis = corrected_vectors(&HamiltonianParams::new(0.0, 2.0, 2.0)).unwrap();
        assert_eq!(basis.r_plus, c64(0.5, 0.0));
        assert_eq!(basis.r_minus, c64(0.5, 0.0));
        assert!(basis.coalescent);
        // phi_+ = i * phi_-
        let i_phi_minus = basis.phi_minus.scale(c64(0.0, 1.0));
        assert!(basis.phi_plus.sub(&i_phi_minus).norm() <= 1e-15);
    }

    #[test]
    fn corrected_vectors_need_nonzero_c() {
        assert_eq!(
            corrected_vectors(&HamiltonianParams::new(0.0, 3.0, 0.0)),
            Err(ModelError::DegenerateParameter("c = 0, R± is undefined"))
        );
    }

    #[test]
    fn legacy_vectors_reference_point() {
        let basis = legacy_vectors(&HamiltonianParams::new(0.0, 3.0, 5.0)).unwrap();
        assert_eq!(basis.r, c64(3.0, 0.0));
        assert_eq!(basis.psi_minus, Vec2C::new(c64(1.0, 0.0), c64(0.0, -3.0)));
        assert_abs_diff_eq!(basis.psi_plus.x1.im, -1.0 / 3.0, epsilon = 1e-16);
    }

    #[test]
    fn legacy_vectors_broken_phase_root() {
        let basis = legacy_vectors(&HamiltonianParams::new(0.0, 5.0, 3.0)).unwrap();
        assert_abs_diff_eq!(basis.r.re, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(basis.r.im, 0.8, epsilon = 1e-15);
    }

    #[test]
    fn legacy_vectors_need_nonzero_b() {
        assert!(matches!(
            legacy_vectors(&HamiltonianParams::new(1.0, 0.0, 5.0)),
            Err(ModelError::DegenerateParameter(_))
        ));
    }

    #[test]
    fn eigen_residual_values() {
        let p = HamiltonianParams::new(0.0, 3.0, 5.0);
        let h = build_hamiltonian(&p);
        let corrected = corrected_vectors(&p).unwrap();
        let legacy = legacy_vectors(&p).unwrap();

        let r_phi = eigen_residual(&h, &corrected.phi_minus, c64(-4.0, 0.0)).unwrap();
        assert!(r_phi <= 1e-14);

        // H psi_- = (4, -12i) while E_- psi_- = (-4, 12i): residual 8.
        let r_psi = eigen_residual(&h, &legacy.psi_minus, c64(-4.0, 0.0)).unwrap();
        assert_abs_diff_eq!(r_psi, 8.0, epsilon = 1e-13);

        // psi_- is in fact the E_+ eigenvector.
        let r_swap = eigen_residual(&h, &legacy.psi_minus, c64(4.0, 0.0)).unwrap();
        assert!(r_swap <= 1e-14);
    }

    #[test]
    fn eigen_residual_rejects_zero_vector() {
        let h = build_hamiltonian(&HamiltonianParams::new(0.0, 3.0, 5.0));
        assert_eq!(
            eigen_residual(&h, &Vec2C::zero(), c64(0.0, 0.0)),
            Err(ModelError::ZeroVector)
        );
    }
}
