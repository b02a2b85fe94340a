//! Von Neumann, thermodynamic, and Shannon entropies.
//!
//! The dimensionless entropy `sigma = -tr(rho ln rho)` is the canonical
//! quantity; the thermodynamic value is `S = k sigma` with the exact defined
//! Boltzmann constant. Two routes compute `sigma`: the eigenvalue route
//! `-sum(l ln l)`, defined for every state, and the trace route
//! `-tr(rho logm(rho))`, which needs an invertible state. Classical
//! quantities work in nats internally with an optional bits conversion.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matlog;
use crate::qstate::DensityMatrix;

/// Exact defined Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Eigenvalues and probabilities within this of {0, 1} are clipped so that
/// `0 ln 0 = 0` holds exactly.
pub const CLIP_WINDOW: f64 = 1e-12;

/// Eigenvalues below this are rejected rather than clipped.
pub const STATE_EIGENVALUE_FLOOR: f64 = -1e-9;

const TRACE_IMAG_TOL: f64 = 1e-10;
const PROB_SUM_TOL: f64 = 1e-9;
const JOINT_SUM_TOL: f64 = 1e-12;

/// Output unit for classical entropies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    fn convert(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / LN_2,
        }
    }
}

/// Entropies of one state: dimensionless, thermodynamic, and the spectrum
/// they came from (ascending).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EntropyReport {
    pub sigma: f64,
    pub s_thermo: f64,
    pub basis_eigenvalues: [f64; 2],
}

/// Joint outcome table for two two-outcome measurements; rows index the
/// first observer's `+`/`-` outcomes, columns the second's.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JointDist {
    p: [[f64; 2]; 2],
}

impl JointDist {
    pub fn new(p: [[f64; 2]; 2]) -> Result<Self> {
        let mut sum = 0.0;
        for row in &p {
            for &x in row {
                if !x.is_finite() || x < -CLIP_WINDOW {
                    return Err(Error::InvalidDistribution(format!(
                        "joint probability {x} out of range"
                    )));
                }
                sum += x;
            }
        }
        if (sum - 1.0).abs() > JOINT_SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "joint probabilities sum to {sum:.17e}"
            )));
        }
        let clip = |x: f64| if x < 0.0 { 0.0 } else { x };
        Ok(JointDist {
            p: [
                [clip(p[0][0]), clip(p[0][1])],
                [clip(p[1][0]), clip(p[1][1])],
            ],
        })
    }

    pub fn probabilities(&self) -> &[[f64; 2]; 2] {
        &self.p
    }

    pub fn flatten(&self) -> [f64; 4] {
        [self.p[0][0], self.p[0][1], self.p[1][0], self.p[1][1]]
    }

    /// Marginal over the first observer's outcomes.
    pub fn marginal_first(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[0][1], self.p[1][0] + self.p[1][1]]
    }

    /// Marginal over the second observer's outcomes.
    pub fn marginal_second(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[1][0], self.p[0][1] + self.p[1][1]]
    }
}

/// Conditional and mutual entropies of a joint table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CondMutual {
    pub h_a_given_b: f64,
    pub h_b_given_a: f64,
    pub mutual: f64,
}

fn clip_unit(x: f64) -> f64 {
    if x <= CLIP_WINDOW {
        0.0
    } else if (x - 1.0).abs() <= CLIP_WINDOW {
        1.0
    } else {
        x
    }
}

fn p_ln_p(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        p * p.ln()
    }
}

// Negating an exactly-zero sum of `p ln p` terms yields -0.0, which would
// leak into reports; a zero entropy is always +0.0.
fn negate_sum(sum: f64) -> f64 {
    if sum == 0.0 {
        0.0
    } else {
        -sum
    }
}

fn clipped_spectrum(rho: &DensityMatrix) -> Result<[f64; 2]> {
    let decomp = matlog::eigen2(rho.mat()).expect("density matrix entries are finite");
    let mut out = [0.0; 2];
    for (slot, ev) in out.iter_mut().zip(decomp.eigenvalues) {
        if ev.re < STATE_EIGENVALUE_FLOOR {
            return Err(Error::NotAState {
                min_eigenvalue: ev.re,
            });
        }
        *slot = clip_unit(ev.re);
    }
    Ok(out)
}

/// Dimensionless entropy via the eigenvalue route, `-sum(l ln l)` in nats.
/// Always in `[0, ln 2]` for a valid state; exactly 0 on pure states.
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    let spectrum = clipped_spectrum(rho)?;
    Ok(negate_sum(p_ln_p(spectrum[0]) + p_ln_p(spectrum[1])))
}

/// Dimensionless entropy via the trace route, `-tr(rho logm(rho))`.
///
/// Requires an invertible state; the imaginary residue of the trace must
/// stay below 1e-10 or the computation is reported as failed.
pub fn von_neumann_tr(rho: &DensityMatrix) -> Result<f64> {
    let log = matlog::logm(rho.mat())?;
    let tr = (*rho.mat() * log.matrix).trace();
    if tr.im.abs() >= TRACE_IMAG_TOL {
        return Err(Error::Numerical(format!(
            "trace imaginary residue {:.3e} exceeds {TRACE_IMAG_TOL:e}",
            tr.im
        )));
    }
    Ok(-tr.re)
}

/// Thermodynamic entropy `S = k sigma` in J/K.
pub fn thermo(sigma: f64) -> Result<f64> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::Domain(format!(
            "dimensionless entropy must be finite and nonnegative, got {sigma}"
        )));
    }
    Ok(BOLTZMANN * sigma)
}

/// Both entropy forms of a state plus its spectrum.
pub fn entropy_report(rho: &DensityMatrix) -> Result<EntropyReport> {
    let basis_eigenvalues = clipped_spectrum(rho)?;
    let sigma = negate_sum(p_ln_p(basis_eigenvalues[0]) + p_ln_p(basis_eigenvalues[1]));
    Ok(EntropyReport {
        sigma,
        s_thermo: BOLTZMANN * sigma,
        basis_eigenvalues,
    })
}

/// Shannon entropy of a probability vector.
pub fn shannon(p: &[f64], units: Units) -> Result<f64> {
    let mut sum = 0.0;
    for &x in p {
        if !x.is_finite() || x < -CLIP_WINDOW {
            return Err(Error::InvalidDistribution(format!(
                "probability {x} out of range"
            )));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::InvalidDistribution(format!(
            "probabilities sum to {sum:.17e}"
        )));
    }
    let nats = negate_sum(p.iter().map(|&x| p_ln_p(clip_unit(x))).sum::<f64>());
    Ok(units.convert(nats))
}

/// Conditional entropies and mutual information of a joint table:
/// `H(A|B) = H(A,B) - H(B)`, `I(A:B) = H(A) + H(B) - H(A,B)`.
pub fn conditional_mutual(joint: &JointDist, units: Units) -> CondMutual {
    let h_joint = shannon(&joint.flatten(), units).expect("joint table is validated");
    let h_a = shannon(&joint.marginal_first(), units).expect("marginals of a valid joint");
    let h_b = shannon(&joint.marginal_second(), units).expect("marginals of a valid joint");
    CondMutual {
        h_a_given_b: h_joint - h_b,
        h_b_given_a: h_joint - h_a,
        mutual: h_a + h_b - h_joint,
    }
}
