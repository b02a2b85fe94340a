//! Spin kets for a measurement direction, the density matrices they
//! generate, and 50-50 incoherent mixtures of two measurement states.
//!
//! A direction is parametrized by a polar rotation `beta` (about y) and a
//! phase rotation `alpha` (about x). The aligned ket in the z basis is
//! `(cos(beta/2), sin(beta/2) e^{i alpha})`; the sign convention flips the
//! lower component. All density matrices here are Hermitian, trace-one, and
//! positive semidefinite up to tolerance, except [`paper_literal_density`],
//! which reproduces a non-Hermitian printed form on purpose.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64};

/// Tolerance for treating a ket as unit norm.
pub const KET_NORM_TOL: f64 = 1e-9;
/// Hermiticity / trace tolerance for validating a density matrix.
pub const STATE_TOL: f64 = 1e-12;
/// Eigenvalues of a valid state may undershoot zero by at most this much.
pub const PSD_TOL: f64 = 1e-12;

/// Measurement direction, both angles normalized into `[0, 2pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Axis {
    alpha: f64,
    beta: f64,
}

impl Axis {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Axis {
            alpha: wrap_angle(alpha),
            beta: wrap_angle(beta),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

fn wrap_angle(x: f64) -> f64 {
    let wrapped = x.rem_euclid(TAU);
    // rem_euclid can return the modulus itself when x is a tiny negative.
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

/// Which output beam of the measurement the state describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(format!("expected '+' or '-', got '{other}'")),
        }
    }
}

/// Two-component spinor in the z basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinKet {
    pub c_plus: C64,
    pub c_minus: C64,
}

impl SpinKet {
    pub fn norm_sqr(&self) -> f64 {
        self.c_plus.norm_sqr() + self.c_minus.norm_sqr()
    }
}

/// Validated 2x2 density matrix: Hermitian, unit trace, PSD up to tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityMatrix(Mat2);

impl DensityMatrix {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        if !m.is_hermitian(STATE_TOL) {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "trace {:.17e} is not 1",
                tr.re
            )));
        }
        let min_eig = hermitian_min_eigenvalue(&m);
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "eigenvalue {min_eig:.3e} is negative"
            )));
        }
        Ok(DensityMatrix(m))
    }

    pub(crate) fn new_unchecked(m: Mat2) -> Self {
        DensityMatrix(m)
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }
}

fn hermitian_min_eigenvalue(m: &Mat2) -> f64 {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    mean - (half_gap * half_gap + m[(0, 1)].norm_sqr()).sqrt()
}

/// Spinor for the `sign` beam of a measurement along `axis`:
/// `(cos(beta/2), +/- sin(beta/2) e^{i alpha})`.
pub fn make_ket(axis: Axis, sign: Sign) -> SpinKet {
    let half = 0.5 * axis.beta();
    let phase = C64::from_polar(1.0, axis.alpha());
    SpinKet {
        c_plus: C64::new(half.cos(), 0.0),
        c_minus: phase * (sign.factor() * half.sin()),
    }
}

/// Hermitian projector `|psi><psi|` built from the conjugated outer product.
///
/// Fails if the ket norm deviates from 1 by more than [`KET_NORM_TOL`].
pub fn density_from_ket(ket: &SpinKet) -> Result<DensityMatrix> {
    let norm = ket.norm_sqr().sqrt();
    if (norm - 1.0).abs() > KET_NORM_TOL {
        return Err(Error::InvalidState(format!(
            "ket norm {norm:.12} deviates from 1 beyond {KET_NORM_TOL:e}"
        )));
    }
    let (p, m) = (ket.c_plus, ket.c_minus);
    Ok(DensityMatrix::new_unchecked(Mat2::new([
        [p * p.conj(), p * m.conj()],
        [m * p.conj(), m * m.conj()],
    ])))
}

/// Real measurement density matrix in the x-z plane (`alpha = 0`):
/// diagonal `cos^2(beta/2), sin^2(beta/2)`, off-diagonal
/// `+/- cos(beta/2) sin(beta/2)`.
pub fn density_xz(beta: f64, sign: Sign) -> DensityMatrix {
    let (s, c) = (0.5 * beta).sin_cos();
    let off = sign.factor() * c * s;
    DensityMatrix::new_unchecked(Mat2::from_real([[c * c, off], [off, s * s]]))
}

/// The general-axis matrix in its literal printed form: neither off-diagonal
/// entry is conjugated and the lower-right entry carries an `e^{i 2 alpha}`
/// phase, so the result is non-Hermitian (and rank one, hence singular)
/// whenever `alpha` is off the x-z plane. Coincides with [`density_xz`] at
/// `alpha = 0`. Returned as a raw [`Mat2`] because it is not a valid state
/// in general; kept alongside the Hermitian construction so complex-logarithm
/// behavior on it can be studied directly.
pub fn paper_literal_density(axis: Axis, sign: Sign) -> Mat2 {
    let (s, c) = (0.5 * axis.beta()).sin_cos();
    let off = C64::from_polar(1.0, axis.alpha()) * (sign.factor() * c * s);
    let lower = C64::from_polar(1.0, 2.0 * axis.alpha()) * (s * s);
    Mat2::new([[C64::new(c * c, 0.0), off], [off, lower]])
}

/// 50-50 incoherent mixture `rho = (rho_a + rho_b) / 2`.
pub fn mix_pair(rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new_unchecked((*rho_a.mat() + *rho_b.mat()).scale(0.5))
}

/// Density matrix of an unpolarized beam entering a single device oriented
/// along `axis`: the even mixture of the aligned projector and the projector
/// onto its orthogonal complement (the state aligned with the opposite
/// direction). Always `diag(1/2, 1/2)`, which is why a single device never
/// produces off-diagonal structure.
pub fn device_beam_density(axis: Axis) -> DensityMatrix {
    let half = 0.5 * axis.beta();
    let aligned = make_ket(axis, Sign::Plus);
    let antialigned = SpinKet {
        c_plus: C64::new(half.sin(), 0.0),
        c_minus: C64::from_polar(1.0, axis.alpha()) * (-half.cos()),
    };
    let p_plus = density_from_ket(&aligned).expect("aligned ket is unit norm");
    let p_minus = density_from_ket(&antialigned).expect("antialigned ket is unit norm");
    mix_pair(&p_plus, &p_minus)
}
