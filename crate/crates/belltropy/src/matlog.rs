//! Closed-form 2x2 eigendecomposition and the matrix logarithm/exponential
//! built on it.
//!
//! Eigenvalues come from `tr/2 +/- sqrt((tr/2)^2 - det)`. Hermitian inputs
//! take a symmetric branch with real eigenvalues and orthonormal
//! eigenvectors. Coincident eigenvalues on a matrix that is not a multiple
//! of the identity mark a defective input; the logarithm then goes through
//! the 2x2 Jordan form `log(l I + N) = ln(l) I + N / l`, transformed back
//! through a basis of one eigenvector and one generalized eigenvector.
//! Complex logarithms use the principal branch, `Im(ln) in (-pi, pi]`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64};

/// Determinant magnitude at or below this means "not invertible".
pub const DEFAULT_DET_TOL: f64 = 1e-12;
/// Relative eigenvalue-gap threshold that routes to the Jordan path.
pub const DEFECT_GAP_TOL: f64 = 1e-10;
/// Inputs Hermitian within this tolerance take the symmetric branch.
pub const HERMITIAN_DETECT_TOL: f64 = 1e-12;
/// Imaginary parts above this make a logarithm "complex".
pub const COMPLEX_REPORT_TOL: f64 = 1e-12;

const MAX_EXP_TERMS: usize = 200;

/// Eigendecomposition of a 2x2 matrix.
///
/// `eigenvectors` holds unit column vectors. When `diagonalizable` is false
/// the columns are instead one eigenvector and one generalized eigenvector
/// solving `(m - l I) w = v`, i.e. the Jordan similarity transform.
#[derive(Clone, Copy, Debug)]
pub struct EigenDecomp {
    pub eigenvalues: [C64; 2],
    pub eigenvectors: Mat2,
    pub diagonalizable: bool,
    pub hermitian_input: bool,
}

/// Which path produced a logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogmMethod {
    Eigen,
    Jordan,
}

impl fmt::Display for LogmMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogmMethod::Eigen => "eigen",
            LogmMethod::Jordan => "jordan",
        })
    }
}

/// Matrix logarithm plus how it was computed and whether it left the reals.
#[derive(Clone, Copy, Debug)]
pub struct LogmResult {
    pub matrix: Mat2,
    pub method: LogmMethod,
    pub is_complex: bool,
}

/// Closed-form eigendecomposition. Fails only on non-finite entries.
pub fn eigen2(m: &Mat2) -> Result<EigenDecomp> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if m.is_hermitian(HERMITIAN_DETECT_TOL) {
        Ok(eigen_hermitian(m))
    } else {
        Ok(eigen_general(m))
    }
}

fn eigen_hermitian(m: &Mat2) -> EigenDecomp {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = (half_gap * half_gap + b.norm_sqr()).sqrt();
    let lo = mean - radius;
    let hi = mean + radius;

    // Null-vector candidates of (m - lo I) from each row; the larger one is
    // the better-conditioned exact eigenvector.
    let c0 = (b, C64::new(lo - a, 0.0));
    let c1 = (C64::new(lo - d, 0.0), b.conj());
    let n0 = c0.0.norm_sqr() + c0.1.norm_sqr();
    let n1 = c1.0.norm_sqr() + c1.1.norm_sqr();
    let eigenvectors = if n0 == 0.0 && n1 == 0.0 {
        Mat2::identity()
    } else {
        let (p, q) = normalize(if n0 >= n1 { c0 } else { c1 });
        // Orthonormal complement picks up the hi eigenvalue.
        Mat2::from_cols((p, q), (-q.conj(), p.conj()))
    };
    EigenDecomp {
        eigenvalues: [C64::new(lo, 0.0), C64::new(hi, 0.0)],
        eigenvectors,
        diagonalizable: true,
        hermitian_input: true,
    }
}

fn eigen_general(m: &Mat2) -> EigenDecomp {
    let h = m.trace().scale_half();
    let s = (h * h - m.det()).sqrt();
    let l0 = h - s;
    let l1 = h + s;
    let scale = m.fro_norm().max(1.0);

    if (l1 - l0).norm() <= DEFECT_GAP_TOL * scale {
        let off_identity = m[(0, 1)].norm() + m[(1, 0)].norm() + (m[(0, 0)] - m[(1, 1)]).norm();
        if off_identity <= DEFECT_GAP_TOL * scale {
            return EigenDecomp {
                eigenvalues: [l0, l1],
                eigenvectors: Mat2::identity(),
                diagonalizable: true,
                hermitian_input: false,
            };
        }
        let v = eigenvector_for(m, h);
        let w = generalized_eigenvector(m, h, v);
        return EigenDecomp {
            eigenvalues: [h, h],
            eigenvectors: Mat2::from_cols(v, w),
            diagonalizable: false,
            hermitian_input: false,
        };
    }

    EigenDecomp {
        eigenvalues: [l0, l1],
        eigenvectors: Mat2::from_cols(eigenvector_for(m, l0), eigenvector_for(m, l1)),
        diagonalizable: true,
        hermitian_input: false,
    }
}

trait ScaleHalf {
    fn scale_half(self) -> C64;
}

impl ScaleHalf for C64 {
    fn scale_half(self) -> C64 {
        C64::new(0.5 * self.re, 0.5 * self.im)
    }
}

fn normalize(v: (C64, C64)) -> (C64, C64) {
    let n = (v.0.norm_sqr() + v.1.norm_sqr()).sqrt();
    (v.0 / n, v.1 / n)
}

fn eigenvector_for(m: &Mat2, lambda: C64) -> (C64, C64) {
    let c0 = (m[(0, 1)], lambda - m[(0, 0)]);
    let c1 = (lambda - m[(1, 1)], m[(1, 0)]);
    let n0 = c0.0.norm_sqr() + c0.1.norm_sqr();
    let n1 = c1.0.norm_sqr() + c1.1.norm_sqr();
    if n0 == 0.0 && n1 == 0.0 {
        return (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    }
    normalize(if n0 >= n1 { c0 } else { c1 })
}

/// Solve `(m - lambda I) w = v` directly. The shifted matrix has rank one,
/// so one pivot row determines a consistent solution.
fn generalized_eigenvector(m: &Mat2, lambda: C64, v: (C64, C64)) -> (C64, C64) {
    let n = *m - Mat2::diag(lambda, lambda);
    let rows = [(n[(0, 0)], n[(0, 1)], v.0), (n[(1, 0)], n[(1, 1)], v.1)];
    let r0 = rows[0].0.norm() + rows[0].1.norm();
    let r1 = rows[1].0.norm() + rows[1].1.norm();
    let (p, q, rhs) = if r0 >= r1 { rows[0] } else { rows[1] };
    if p.norm() >= q.norm() {
        (rhs / p, C64::new(0.0, 0.0))
    } else {
        (C64::new(0.0, 0.0), rhs / q)
    }
}

/// True when `|det(m)| > tol`.
pub fn is_invertible(m: &Mat2, tol: f64) -> bool {
    m.det().norm() > tol
}

/// Principal matrix logarithm at the default determinant tolerance.
pub fn logm(m: &Mat2) -> Result<LogmResult> {
    logm_with_tol(m, DEFAULT_DET_TOL)
}

/// Principal matrix logarithm; `det_tol` sets the invertibility cutoff.
pub fn logm_with_tol(m: &Mat2, det_tol: f64) -> Result<LogmResult> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let det_abs = m.det().norm();
    if det_abs <= det_tol {
        return Err(Error::NotInvertible {
            det_abs,
            tol: det_tol,
        });
    }
    let decomp = eigen2(m)?;
    let (matrix, method) = if decomp.diagonalizable {
        (reconstruct(&decomp, C64::ln)?, LogmMethod::Eigen)
    } else {
        (jordan_log(&decomp)?, LogmMethod::Jordan)
    };
    Ok(LogmResult {
        matrix,
        method,
        is_complex: matrix.max_imag() > COMPLEX_REPORT_TOL,
    })
}

/// Matrix exponential: eigenbasis when diagonalizable, otherwise a scaled
/// and squared Taylor series (which truncates exactly on nilpotent parts).
pub fn expm(m: &Mat2) -> Result<Mat2> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let decomp = eigen2(m)?;
    if decomp.diagonalizable {
        reconstruct(&decomp, C64::exp)
    } else {
        expm_series(m)
    }
}

/// Apply `f` to the eigenvalues and transform back.
fn reconstruct(decomp: &EigenDecomp, f: impl Fn(C64) -> C64) -> Result<Mat2> {
    let d = Mat2::diag(f(decomp.eigenvalues[0]), f(decomp.eigenvalues[1]));
    let v = decomp.eigenvectors;
    let v_inv = if decomp.hermitian_input {
        v.adjoint()
    } else {
        invert(&v)?
    };
    Ok(v * d * v_inv)
}

fn jordan_log(decomp: &EigenDecomp) -> Result<Mat2> {
    let lambda = (decomp.eigenvalues[0] + decomp.eigenvalues[1]).scale_half();
    let zero = C64::new(0.0, 0.0);
    let log_j = Mat2::new([[lambda.ln(), lambda.inv()], [zero, lambda.ln()]]);
    let p = decomp.eigenvectors;
    Ok(p * log_j * invert(&p)?)
}

fn invert(m: &Mat2) -> Result<Mat2> {
    let det = m.det();
    if det.norm() == 0.0 {
        return Err(Error::Numerical("basis matrix is exactly singular".into()));
    }
    let inv_det = det.inv();
    Ok(Mat2::new([
        [m[(1, 1)] * inv_det, -m[(0, 1)] * inv_det],
        [-m[(1, 0)] * inv_det, m[(0, 0)] * inv_det],
    ]))
}

fn expm_series(m: &Mat2) -> Result<Mat2> {
    let norm = m.fro_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let x = m.scale(0.5_f64.powi(squarings));
    let mut sum = Mat2::identity();
    let mut term = Mat2::identity();
    let mut converged = false;
    for k in 1..=MAX_EXP_TERMS {
        term = (term * x).scale(1.0 / k as f64);
        sum = sum + term;
        if term.max_abs() <= f64::EPSILON * sum.max_abs() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "exponential series did not converge in {MAX_EXP_TERMS} terms"
        )));
    }
    let mut out = sum;
    for _ in 0..squarings {
        out = out * out;
    }
    Ok(out)
}
