//! The symmetry operators of the family (C, P, T, and their compositions)
//! together with the structural checks used throughout the battery:
//! commutation, involution, pseudo-Hermiticity, and the completeness-sum
//! reconstruction of the parity operator.

use num_complex::Complex64;

use crate::cxmat::{eigen_oracle, AntilinearOp, Mat2C, Vec2C};
use crate::error::ModelError;
use crate::hamiltonian::{corrected_vectors, discriminant_root, HamiltonianParams};

/// Relative guard under which `c^2 - b^2` counts as zero for operators that
/// carry `1/sqrt(c^2 - b^2)`.
pub const EXCEPTIONAL_POINT_TOL: f64 = 1e-14;

/// Absolute determinant floor below which the completeness sum counts as
/// singular.
pub const SINGULAR_SUM_TOL: f64 = 1e-14;

/// Reading of the bra in the completeness sum. The source derivation leaves
/// the pairing implicit, so both readings are computed and reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugationConvention {
    /// Bra is the conjugate transpose of the ket.
    Hermitian,
    /// Bra is the plain transpose (no conjugation).
    Transpose,
}

/// Result of squaring an operator expected to be an involution.
#[derive(Debug, Clone, Copy)]
pub struct InvolutionReport {
    /// Frobenius distance of the square from the identity.
    pub square_residual: f64,
    /// Eigenvalues ordered by `(re, im)` ascending.
    pub eigenvalues: (Complex64, Complex64),
}

fn guard_exceptional(p: &HamiltonianParams) -> Result<(), ModelError> {
    let scale = p.b * p.b + p.c * p.c;
    if p.discriminant().abs() <= EXCEPTIONAL_POINT_TOL * scale {
        return Err(ModelError::ExceptionalPoint);
    }
    Ok(())
}

/// The commuting symmetry operator
/// `C = (1/s) [[c, -ib], [-ib, -c]]` with `s = sqrt(c^2 - b^2)`.
/// Diverges at the exceptional point, which is a hard error here.
pub fn c_operator(p: &HamiltonianParams) -> Result<Mat2C, ModelError> {
    guard_exceptional(p)?;
    let inv_s = Complex64::new(1.0, 0.0) / discriminant_root(p);
    let c = Complex64::new(p.c, 0.0);
    let minus_ib = Complex64::new(0.0, -p.b);
    Ok(Mat2C::new(c, minus_ib, minus_ib, -c).scale(inv_s))
}

/// The earlier (non-commuting) operator `[[0, -i/r], [ir, 0]]`.
pub fn legacy_c_operator(p: &HamiltonianParams) -> Result<Mat2C, ModelError> {
    if p.b == 0.0 {
        return Err(ModelError::DegenerateParameter("b = 0, r is undefined"));
    }
    let s = discriminant_root(p);
    let r = (Complex64::new(p.c, 0.0) + s) / Complex64::new(p.b, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    Ok(Mat2C::new(z, -i / r, i * r, z))
}

/// Parity operator `diag(-1, 1)`.
pub fn parity() -> Mat2C {
    Mat2C::diag(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0))
}

/// Time reversal: plain complex conjugation (identity matrix with the
/// conjugation flag set), the antilinear solution of `T^-1 (-i) T = i`.
pub fn time_reversal() -> AntilinearOp {
    AntilinearOp::conjugation()
}

/// Combined parity and time reversal: `diag(-1, 1)` with conjugation.
pub fn pt_operator() -> AntilinearOp {
    AntilinearOp::new(parity(), true)
}

/// Combined C, parity, and time reversal: matrix `C * diag(-1, 1)` with
/// conjugation. Inherits the exceptional-point error from `c_operator`.
pub fn cpt_operator(p: &HamiltonianParams) -> Result<AntilinearOp, ModelError> {
    let c = c_operator(p)?;
    Ok(AntilinearOp::new(c.mul(&parity()), true))
}

fn outer(v: &Vec2C, conv: ConjugationConvention) -> Mat2C {
    let (b0, b1) = match conv {
        ConjugationConvention::Hermitian => (v.x0.conj(), v.x1.conj()),
        ConjugationConvention::Transpose => (v.x0, v.x1),
    };
    Mat2C::new(v.x0 * b0, v.x0 * b1, v.x1 * b0, v.x1 * b1)
}

/// `|phi_-><phi_-| + |phi_+><phi_+|` under the selected bra reading.
pub fn completeness_sum(
    basis: &crate::hamiltonian::CorrectedBasis,
    conv: ConjugationConvention,
) -> Mat2C {
    outer(&basis.phi_minus, conv).add(&outer(&basis.phi_plus, conv))
}

/// `C * (completeness sum)^-1` together with its Frobenius distance from
/// `diag(-1, 1)`. The sum singularity is checked before the operator guard so
/// a degenerate sum reports as such.
pub fn reconstruct_parity(
    p: &HamiltonianParams,
    conv: ConjugationConvention,
) -> Result<(Mat2C, f64), ModelError> {
    let basis = corrected_vectors(p)?;
    let sum = completeness_sum(&basis, conv);
    if sum.det().norm() <= SINGULAR_SUM_TOL {
        return Err(ModelError::SingularSum);
    }
    let c = c_operator(p)?;
    let reconstructed = c.mul(&sum.inverse()?);
    let residual = reconstructed.sub(&parity()).frobenius_norm();
    Ok((reconstructed, residual))
}

/// `|X^2 - I|` plus the eigenvalues of `X`.
pub fn involution_check(x: &Mat2C) -> InvolutionReport {
    let square_residual = x.mul(x).sub(&Mat2C::identity()).frobenius_norm();
    let eig = eigen_oracle(x);
    InvolutionReport {
        square_residual,
        eigenvalues: (eig.lambda1, eig.lambda2),
    }
}

/// `|P H P^-1 - H^dagger|`; `SingularMatrix` when `P` is not invertible.
pub fn pseudo_hermiticity_residual(h: &Mat2C, p: &Mat2C) -> Result<f64, ModelError> {
    let transformed = p.mul(h).mul(&p.inverse()?);
    Ok(transformed.sub(&h.adjoint()).frobenius_norm())
}
