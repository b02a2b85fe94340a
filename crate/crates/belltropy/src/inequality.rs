//! Bell-type inequality checkers over measurement-angle triples.
//!
//! Every checker reduces to a list of margins, each of the form
//! `rhs - lhs` for one scalar comparison; the inequality holds when the
//! worst margin stays above `-1e-12`. Four forms are covered:
//!
//! * `wigner_prob`: singlet same-outcome probabilities,
//!   `P(a+; c+) <= P(a+; b+) + P(b+; c+)`.
//! * `matrix_entrywise` / `matrix_loewner`: the mixture comparison
//!   `rho_cb <= rho_ab + rho_ac`, read entry by entry or in the
//!   positive-semidefinite order.
//! * `entropic`: the same comparison after mapping each mixture to its
//!   dimensionless entropy, `sigma_cb <= sigma_ab + sigma_ac`.
//! * `cerf_adami`: conditional-entropy chaining on singlet statistics,
//!   `H(A|C) <= H(A|B) + H(B|C)`.

use serde::Serialize;

use crate::entropy::{conditional_mutual, von_neumann, JointDist, Units};
use crate::error::{Error, Result};
use crate::qstate::{density_xz, mix_pair, DensityMatrix, Sign};

/// An inequality holds when every margin is at least `-HOLD_TOL`.
pub const HOLD_TOL: f64 = 1e-12;

const ENTRYWISE_IMAG_TOL: f64 = 1e-12;

/// Which comparison a verdict reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IneqKind {
    WignerProb,
    MatrixEntrywise,
    MatrixLoewner,
    Entropic,
    CerfAdami,
}

impl std::fmt::Display for IneqKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IneqKind::WignerProb => "wigner_prob",
            IneqKind::MatrixEntrywise => "matrix_entrywise",
            IneqKind::MatrixLoewner => "matrix_loewner",
            IneqKind::Entropic => "entropic",
            IneqKind::CerfAdami => "cerf_adami",
        })
    }
}

/// How to read the matrix comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixOrder {
    Entrywise,
    Loewner,
}

impl std::fmt::Display for MatrixOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatrixOrder::Entrywise => "entrywise",
            MatrixOrder::Loewner => "loewner",
        })
    }
}

/// The inputs a verdict was computed from.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InputsEcho {
    pub angles: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<[Sign; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<MatrixOrder>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub units: Option<Units>,
}

impl InputsEcho {
    fn angles_only(angles: [f64; 3]) -> Self {
        InputsEcho {
            angles,
            signs: None,
            mode: None,
            units: None,
        }
    }
}

/// Outcome of one inequality evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct IneqVerdict {
    pub kind: IneqKind,
    pub holds: bool,
    pub margins: Vec<f64>,
    pub worst_margin: f64,
    pub inputs_echo: InputsEcho,
}

impl IneqVerdict {
    fn from_margins(kind: IneqKind, margins: Vec<f64>, inputs_echo: InputsEcho) -> Self {
        let worst_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
        IneqVerdict {
            kind,
            holds: worst_margin >= -HOLD_TOL,
            margins,
            worst_margin,
            inputs_echo,
        }
    }
}

/// Singlet joint outcome law for analyzer gap `theta`: equal outcomes carry
/// probability `sin^2(theta/2) / 2` each, opposite outcomes
/// `cos^2(theta/2) / 2` each. Marginals are uniform.
pub fn singlet_joint(theta: f64) -> JointDist {
    let same = 0.5 * (0.5 * theta).sin().powi(2);
    let diff = 0.5 * (0.5 * theta).cos().powi(2);
    JointDist::new([[same, diff], [diff, same]]).expect("singlet law is normalized")
}

/// Pairwise-probability chaining on singlet statistics. The margin is
/// `P(a+; b+) + P(b+; c+) - P(a+; c+)` with `P = sin^2(gap/2) / 2`.
pub fn check_wigner_prob(beta_a: f64, beta_b: f64, beta_c: f64) -> IneqVerdict {
    let p = |x: f64, y: f64| 0.5 * (0.5 * (x - y)).sin().powi(2);
    let margin = p(beta_a, beta_b) + p(beta_b, beta_c) - p(beta_a, beta_c);
    IneqVerdict::from_margins(
        IneqKind::WignerProb,
        vec![margin],
        InputsEcho::angles_only([beta_a, beta_b, beta_c]),
    )
}

fn mixture_triple(
    betas: [f64; 3],
    signs: [Sign; 3],
) -> (DensityMatrix, DensityMatrix, DensityMatrix) {
    let rho_a = density_xz(betas[0], signs[0]);
    let rho_b = density_xz(betas[1], signs[1]);
    let rho_c = density_xz(betas[2], signs[2]);
    (
        mix_pair(&rho_c, &rho_b),
        mix_pair(&rho_a, &rho_b),
        mix_pair(&rho_a, &rho_c),
    )
}

/// Matrix-order comparison `rho_cb <= rho_ab + rho_ac` on x-z mixtures.
///
/// Entrywise mode lists four margins, one per entry of
/// `rho_ab + rho_ac - rho_cb`; Loewner mode lists the minimum eigenvalue of
/// that difference. Entrywise comparison is only defined while every entry
/// is real, which the x-z construction guarantees.
pub fn check_matrix(betas: [f64; 3], signs: [Sign; 3], mode: MatrixOrder) -> Result<IneqVerdict> {
    let (rho_cb, rho_ab, rho_ac) = mixture_triple(betas, signs);
    let echo = InputsEcho {
        angles: betas,
        signs: Some(signs),
        mode: Some(mode),
        units: None,
    };
    compare_mixtures(&rho_cb, &rho_ab, &rho_ac, mode, echo)
}

/// The comparison behind [`check_matrix`], on already-built mixtures.
/// Rejects entrywise comparison when any input entry is meaningfully
/// complex, since the entrywise order is undefined there.
pub(crate) fn compare_mixtures(
    rho_cb: &DensityMatrix,
    rho_ab: &DensityMatrix,
    rho_ac: &DensityMatrix,
    mode: MatrixOrder,
    inputs_echo: InputsEcho,
) -> Result<IneqVerdict> {
    let diff = *rho_ab.mat() + *rho_ac.mat() - *rho_cb.mat();
    match mode {
        MatrixOrder::Entrywise => {
            let max_imag = rho_cb
                .mat()
                .max_imag()
                .max(rho_ab.mat().max_imag())
                .max(rho_ac.mat().max_imag());
            if max_imag > ENTRYWISE_IMAG_TOL {
                return Err(Error::NotComparable { max_imag });
            }
            let margins = vec![
                diff[(0, 0)].re,
                diff[(0, 1)].re,
                diff[(1, 0)].re,
                diff[(1, 1)].re,
            ];
            Ok(IneqVerdict::from_margins(
                IneqKind::MatrixEntrywise,
                margins,
                inputs_echo,
            ))
        }
        MatrixOrder::Loewner => {
            let a = diff[(0, 0)].re;
            let d = diff[(1, 1)].re;
            let mean = 0.5 * (a + d);
            let half_gap = 0.5 * (a - d);
            let min_eig = mean - (half_gap * half_gap + diff[(0, 1)].norm_sqr()).sqrt();
            Ok(IneqVerdict::from_margins(
                IneqKind::MatrixLoewner,
                vec![min_eig],
                inputs_echo,
            ))
        }
    }
}

/// Entropic form of the mixture comparison: margin
/// `sigma_ab + sigma_ac - sigma_cb` in nats. The thermodynamic version
/// only rescales by the Boltzmann constant, so the verdict is identical.
pub fn check_entropy(betas: [f64; 3], signs: [Sign; 3]) -> IneqVerdict {
    let (rho_cb, rho_ab, rho_ac) = mixture_triple(betas, signs);
    let sigma = |rho: &DensityMatrix| von_neumann(rho).expect("mixtures are valid states");
    let margin = sigma(&rho_ab) + sigma(&rho_ac) - sigma(&rho_cb);
    IneqVerdict::from_margins(
        IneqKind::Entropic,
        vec![margin],
        InputsEcho {
            angles: betas,
            signs: Some(signs),
            mode: None,
            units: None,
        },
    )
}

/// Conditional-entropy chaining on singlet statistics,
/// `H(A|C) <= H(A|B) + H(B|C)`, each term from the joint law at one gap.
/// The margin is reported in the requested units.
pub fn check_cerf_adami(theta_ab: f64, theta_bc: f64, theta_ac: f64, units: Units) -> IneqVerdict {
    let cond = |theta: f64| conditional_mutual(&singlet_joint(theta), units).h_a_given_b;
    let margin = cond(theta_ab) + cond(theta_bc) - cond(theta_ac);
    IneqVerdict::from_margins(
        IneqKind::CerfAdami,
        vec![margin],
        InputsEcho {
            angles: [theta_ab, theta_bc, theta_ac],
            signs: None,
            mode: None,
            units: Some(units),
        },
    )
}
