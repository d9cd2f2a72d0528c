//! Fixed-size complex linear algebra: 2-component vectors, 2x2 matrices,
//! antilinear operators, and a closed-form eigensolver used as an independent
//! cross-check for every analytic formula in the crate.
//!
//! Everything here is an immutable value and every operation is a pure
//! function, so concurrent use needs no coordination.

use num_complex::Complex64;

use crate::error::ModelError;

/// A 2-component complex vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2C {
    pub x0: Complex64,
    pub x1: Complex64,
}

impl Vec2C {
    pub const fn new(x0: Complex64, x1: Complex64) -> Self {
        Self { x0, x1 }
    }

    pub fn zero() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// Standard basis vector `e_i` (i = 0 or 1).
    pub fn axis(i: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        if i == 0 {
            Self::new(one, zero)
        } else {
            Self::new(zero, one)
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.x0.conj(), self.x1.conj())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x0.norm_sqr() + self.x1.norm_sqr()
    }

    /// Hermitian norm sqrt(|x0|^2 + |x1|^2).
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sqr() == 0.0
    }

    /// Hermitian inner product `<self, other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.x0.conj() * other.x0 + self.x1.conj() * other.x1
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(s * self.x0, s * self.x1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x0 - other.x0, self.x1 - other.x1)
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(self.scale(Complex64::new(1.0 / n, 0.0)))
        }
    }
}

/// A 2x2 complex matrix in row-major entry order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2C {
    pub m00: Complex64,
    pub m01: Complex64,
    pub m10: Complex64,
    pub m11: Complex64,
}

impl Mat2C {
    pub const fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self { m00, m01, m10, m11 }
    }

    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        Self::diag(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn diag(d0: Complex64, d1: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(d0, z, z, d1)
    }

    pub fn trace(&self) -> Complex64 {
        self.m00 + self.m11
    }

    pub fn det(&self) -> Complex64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.m00.conj(),
            self.m01.conj(),
            self.m10.conj(),
            self.m11.conj(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m00, self.m10, self.m01, self.m11)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.m00.conj(),
            self.m10.conj(),
            self.m01.conj(),
            self.m11.conj(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.m00 + other.m00,
            self.m01 + other.m01,
            self.m10 + other.m10,
            self.m11 + other.m11,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.m00 - other.m00,
            self.m01 - other.m01,
            self.m10 - other.m10,
            self.m11 - other.m11,
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(s * self.m00, s * self.m01, s * self.m10, s * self.m11)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )
    }

    pub fn mul_vec(&self, v: &Vec2C) -> Vec2C {
        Vec2C::new(
            self.m00 * v.x0 + self.m01 * v.x1,
            self.m10 * v.x0 + self.m11 * v.x1,
        )
    }

    /// sqrt of the sum of squared entry magnitudes; zero iff the matrix is zero.
    pub fn frobenius_norm(&self) -> f64 {
        (self.m00.norm_sqr() + self.m01.norm_sqr() + self.m10.norm_sqr() + self.m11.norm_sqr())
            .sqrt()
    }

    /// Inverse via the adjugate; `SingularMatrix` when the determinant is zero.
    pub fn inverse(&self) -> Result<Self, ModelError> {
        let d = self.det();
        if d.norm() == 0.0 {
            return Err(ModelError::SingularMatrix);
        }
        let inv_d = Complex64::new(1.0, 0.0) / d;
        Ok(Self::new(
            inv_d * self.m11,
            -inv_d * self.m01,
            -inv_d * self.m10,
            inv_d * self.m00,
        ))
    }
}

/// Commutator `AB - BA`.
pub fn commutator(a: &Mat2C, b: &Mat2C) -> Mat2C {
    a.mul(b).sub(&b.mul(a))
}

/// An antilinear operator: a matrix composed with an optional complex
/// conjugation. With `conjugates` set the action is `v -> m * conj(v)`,
/// otherwise the operator is plain linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntilinearOp {
    pub m: Mat2C,
    pub conjugates: bool,
}

impl AntilinearOp {
    pub const fn new(m: Mat2C, conjugates: bool) -> Self {
        Self { m, conjugates }
    }

    /// Pure conjugation: identity matrix followed by `conj`.
    pub fn conjugation() -> Self {
        Self::new(Mat2C::identity(), true)
    }

    /// A plain linear operator lifted into this representation.
    pub fn linear(m: Mat2C) -> Self {
        Self::new(m, false)
    }

    pub fn apply(&self, v: &Vec2C) -> Vec2C {
        if self.conjugates {
            self.m.mul_vec(&v.conj())
        } else {
            self.m.mul_vec(v)
        }
    }

    /// Composition `self . other` (apply `other` first):
    /// the conjugation flags xor and the matrix of `other` is conjugated
    /// whenever `self` conjugates.
    pub fn compose(&self, other: &Self) -> Self {
        let rhs = if self.conjugates {
            other.m.conj()
        } else {
            other.m
        };
        Self::new(self.m.mul(&rhs), self.conjugates ^ other.conjugates)
    }

    /// Inverse operator; `SingularMatrix` when the matrix part is singular.
    pub fn inverse(&self) -> Result<Self, ModelError> {
        let inv = self.m.inverse()?;
        if self.conjugates {
            Ok(Self::new(inv.conj(), true))
        } else {
            Ok(Self::new(inv, false))
        }
    }

    /// Similarity transform `self . A . self^-1` of a linear map, returned as
    /// a plain matrix (the conjugation flags cancel).
    pub fn conjugate_matrix(&self, a: &Mat2C) -> Result<Mat2C, ModelError> {
        let inv = self.inverse()?;
        Ok(self.compose(&Self::linear(*a)).compose(&inv).m)
    }
}

/// Apply an antilinear operator to a vector.
pub fn apply_antilinear(t: &AntilinearOp, v: &Vec2C) -> Vec2C {
    t.apply(v)
}

/// Eigen-decomposition of a 2x2 complex matrix.
#[derive(Debug, Clone, Copy)]
pub struct Eigen2 {
    pub lambda1: Complex64,
    pub v1: Vec2C,
    pub lambda2: Complex64,
    pub v2: Vec2C,
    /// Set when the eigenvalues coincide and the eigenspace is one-dimensional.
    pub defective: bool,
}

/// Relative gap below which two eigenvalues count as coincident.
const DEFECTIVE_GAP_TOL: f64 = 1e-9;
/// Overlap above which two unit kernel vectors count as parallel.
const DEFECTIVE_OVERLAP_TOL: f64 = 1e-9;

fn kernel_vector(a: &Mat2C, lambda: Complex64, axis: usize) -> Vec2C {
    // Rows of (A - lambda I); a kernel vector of the larger-magnitude row is
    // the numerically robust choice near coalescence.
    let r0 = (a.m00 - lambda, a.m01);
    let r1 = (a.m10, a.m11 - lambda);
    let n0 = r0.0.norm_sqr() + r0.1.norm_sqr();
    let n1 = r1.0.norm_sqr() + r1.1.norm_sqr();
    let (p, q, biggest) = if n0 >= n1 {
        (r0.0, r0.1, n0)
    } else {
        (r1.0, r1.1, n1)
    };
    if biggest == 0.0 {
        // A is exactly lambda * I; any direction works, keep the axes so a
        // scalar matrix reports an orthonormal pair.
        return Vec2C::axis(axis);
    }
    // (q, -p) annihilates the row (p, q).
    Vec2C::new(q, -p)
        .normalized()
        .expect("nonzero row yields nonzero kernel vector")
}

/// Closed-form eigensolver: roots of `det(A - lambda I) = 0` by the quadratic
/// formula on trace and determinant, with unit kernel vectors per eigenvalue.
/// Eigenvalues are ordered by `(re, im)` ascending.
pub fn eigen_oracle(a: &Mat2C) -> Eigen2 {
    let half_trace = a.trace() * Complex64::new(0.5, 0.0);
    let disc = half_trace * half_trace - a.det();
    let root = disc.sqrt();

    let mut lambda1 = half_trace - root;
    let mut lambda2 = half_trace + root;
    if (lambda2.re, lambda2.im) < (lambda1.re, lambda1.im) {
        std::mem::swap(&mut lambda1, &mut lambda2);
    }

    let v1 = kernel_vector(a, lambda1, 0);
    let v2 = kernel_vector(a, lambda2, 1);

    let scale = 1.0 + a.frobenius_norm();
    let coincident = (lambda1 - lambda2).norm() <= DEFECTIVE_GAP_TOL * scale;
    let parallel = v1.inner(&v2).norm() > 1.0 - DEFECTIVE_OVERLAP_TOL;

    Eigen2 {
        lambda1,
        v1,
        lambda2,
        v2,
        defective: coincident && parallel,
    }
}
