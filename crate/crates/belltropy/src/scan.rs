//! Grid sweeps over measurement angles and CSV/JSON artifact emission.
//!
//! A scan evaluates one inequality checker at every point of an axis-aligned
//! angle grid, buffers the results in lexicographic grid-index order (the
//! evaluation itself may run in parallel), and aggregates a summary. Two
//! runs of the same configuration produce byte-identical output.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::Units;
use crate::error::{Error, Result};
use crate::inequality::{
    check_cerf_adami, check_entropy, check_matrix, check_wigner_prob, IneqKind, IneqVerdict,
    MatrixOrder,
};
use crate::qstate::Sign;

/// Hard cap on grid size, as a guard against runaway sweeps.
pub const MAX_GRID_POINTS: u128 = 100_000_000;

/// Default grid step: five degrees.
pub const DEFAULT_STEP: f64 = std::f64::consts::PI / 36.0;

/// CSV header emitted before any records.
pub const CSV_HEADER: &str = "kind,beta_a,beta_b,beta_c,sign_a,sign_b,sign_c,mode,holds,\
                              worst_margin,margin_0,margin_1,margin_2,margin_3,status";

/// Half-open sampling range `[start, stop)`. A zero-length range still
/// yields the single point `start`; an inclusive endpoint can be expressed
/// by padding `stop` past it by less than one step.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AngleRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl AngleRange {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let range = AngleRange { start, stop, step };
        range.check()?;
        Ok(range)
    }

    /// The degenerate range holding exactly one value.
    pub fn single(value: f64) -> Self {
        AngleRange {
            start: value,
            stop: value,
            step: 1.0,
        }
    }

    /// `[0, 2pi)` at the given step.
    pub fn full_turn(step: f64) -> Result<Self> {
        AngleRange::new(0.0, std::f64::consts::TAU, step)
    }

    fn check(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(Error::Config("angle range must be finite".into()));
        }
        if self.step <= 0.0 {
            return Err(Error::Config(format!(
                "range step must be positive, got {}",
                self.step
            )));
        }
        if self.stop < self.start {
            return Err(Error::Config(format!(
                "range stop {} precedes start {}",
                self.stop, self.start
            )));
        }
        Ok(())
    }

    /// Number of grid points. The small slack keeps `stop` values that land
    /// exactly on a step boundary out of the half-open range.
    pub fn points(&self) -> usize {
        ((self.stop - self.start) / self.step - 1e-9)
            .ceil()
            .max(1.0) as usize
    }

    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }
}

/// Which checker a scan drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    WignerProb,
    Matrix,
    Entropic,
    CerfAdami,
}

impl std::fmt::Display for ScanKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScanKind::WignerProb => "wigner_prob",
            ScanKind::Matrix => "matrix",
            ScanKind::Entropic => "entropic",
            ScanKind::CerfAdami => "cerf_adami",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Full description of one sweep. `signs` applies to the matrix and
/// entropic kinds, `mode` to the matrix kind, and `units` to the
/// conditional-entropy kind; the others ignore them.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanConfig {
    pub kind: ScanKind,
    pub ranges: [AngleRange; 3],
    pub signs: [Sign; 3],
    pub mode: MatrixOrder,
    pub units: Units,
    /// Collapse the third angle to the sum of the first two, scanning a
    /// two-dimensional slice (for gap-based kinds this is the coplanar
    /// arrangement `theta_ac = theta_ab + theta_bc`).
    pub coplanar: bool,
    pub output_format: OutputFormat,
}

impl ScanConfig {
    /// Defaults: every angle over `[0, 2pi)` at five degrees, all-plus
    /// outcomes, entrywise order, nats, CSV.
    pub fn new(kind: ScanKind) -> Self {
        let range = AngleRange::full_turn(DEFAULT_STEP).expect("default range is valid");
        ScanConfig {
            kind,
            ranges: [range; 3],
            signs: [Sign::Plus; 3],
            mode: MatrixOrder::Entrywise,
            units: Units::Nats,
            coplanar: false,
            output_format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for range in &self.ranges {
            range.check()?;
        }
        let total: u128 = self.grid_counts().iter().map(|&n| n as u128).product();
        if total > MAX_GRID_POINTS {
            return Err(Error::Config(format!(
                "scan grid has {total} points, above the cap of {MAX_GRID_POINTS}"
            )));
        }
        Ok(())
    }

    /// Points along each grid dimension; the third collapses to one under
    /// the coplanar preset.
    pub fn grid_counts(&self) -> [usize; 3] {
        [
            self.ranges[0].points(),
            self.ranges[1].points(),
            if self.coplanar {
                1
            } else {
                self.ranges[2].points()
            },
        ]
    }

    pub fn angles_at(&self, index: [usize; 3]) -> [f64; 3] {
        let a = self.ranges[0].value(index[0]);
        let b = self.ranges[1].value(index[1]);
        let c = if self.coplanar {
            a + b
        } else {
            self.ranges[2].value(index[2])
        };
        [a, b, c]
    }

    /// The verdict kind every record of this scan carries.
    pub fn ineq_kind(&self) -> IneqKind {
        match self.kind {
            ScanKind::WignerProb => IneqKind::WignerProb,
            ScanKind::Matrix => match self.mode {
                MatrixOrder::Entrywise => IneqKind::MatrixEntrywise,
                MatrixOrder::Loewner => IneqKind::MatrixLoewner,
            },
            ScanKind::Entropic => IneqKind::Entropic,
            ScanKind::CerfAdami => IneqKind::CerfAdami,
        }
    }

    fn evaluate(&self, angles: [f64; 3]) -> Result<IneqVerdict> {
        match self.kind {
            ScanKind::WignerProb => Ok(check_wigner_prob(angles[0], angles[1], angles[2])),
            ScanKind::Matrix => check_matrix(angles, self.signs, self.mode),
            ScanKind::Entropic => Ok(check_entropy(angles, self.signs)),
            ScanKind::CerfAdami => Ok(check_cerf_adami(
                angles[0], angles[1], angles[2], self.units,
            )),
        }
    }
}

/// Per-point disposition: `not_comparable` marks points where the checker's
/// own premise fails (complex entries under the entrywise order), recorded
/// rather than treated as fatal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Ok,
    NotComparable,
}

impl std::fmt::Display for PointStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PointStatus::Ok => "ok",
            PointStatus::NotComparable => "not_comparable",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub index: [usize; 3],
    pub angles: [f64; 3],
    pub status: PointStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<IneqVerdict>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MarginAt {
    pub margin: f64,
    pub angles: [f64; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub total_points: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_violation: Option<MarginAt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub largest_hold_margin: Option<MarginAt>,
}

/// Sweep the configured grid (in parallel) and aggregate a summary.
pub fn run_scan(config: &ScanConfig) -> Result<(Vec<ScanRecord>, ScanSummary)> {
    run_scan_with(config, true)
}

/// As [`run_scan`], with evaluation order under the caller's control.
/// Output is identical either way: records always land in lexicographic
/// grid-index order.
pub fn run_scan_with(
    config: &ScanConfig,
    parallel: bool,
) -> Result<(Vec<ScanRecord>, ScanSummary)> {
    config.validate()?;
    let counts = config.grid_counts();
    let total = counts[0] * counts[1] * counts[2];
    let eval = |flat: usize| -> Result<ScanRecord> {
        let index = [
            flat / (counts[1] * counts[2]),
            (flat / counts[2]) % counts[1],
            flat % counts[2],
        ];
        let angles = config.angles_at(index);
        match config.evaluate(angles) {
            Ok(verdict) => Ok(ScanRecord {
                index,
                angles,
                status: PointStatus::Ok,
                verdict: Some(verdict),
            }),
            Err(Error::NotComparable { .. }) => Ok(ScanRecord {
                index,
                angles,
                status: PointStatus::NotComparable,
                verdict: None,
            }),
            Err(e) => Err(e),
        }
    };
    let records: Vec<ScanRecord> = if parallel {
        (0..total)
            .into_par_iter()
            .map(eval)
            .collect::<Result<_>>()?
    } else {
        (0..total).map(eval).collect::<Result<_>>()?
    };
    let summary = summarize(&records);
    Ok((records, summary))
}

fn summarize(records: &[ScanRecord]) -> ScanSummary {
    let mut violations = 0;
    let mut worst: Option<MarginAt> = None;
    let mut best: Option<MarginAt> = None;
    for record in records {
        let Some(verdict) = &record.verdict else {
            continue;
        };
        let at = MarginAt {
            margin: verdict.worst_margin,
            angles: record.angles,
        };
        if verdict.holds {
            // Strict comparison keeps the first (lexicographically
            // earliest) point on ties.
            if best.is_none_or(|b| at.margin > b.margin) {
                best = Some(at);
            }
        } else {
            violations += 1;
            if worst.is_none_or(|w| at.margin < w.margin) {
                worst = Some(at);
            }
        }
    }
    ScanSummary {
        total_points: records.len(),
        violations,
        worst_violation: worst,
        largest_hold_margin: best,
    }
}

/// 17 significant digits: enough for a lossless f64 round trip.
fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write records and summary in the configured format.
pub fn emit<W: Write>(
    w: W,
    config: &ScanConfig,
    records: &[ScanRecord],
    summary: &ScanSummary,
) -> Result<()> {
    match config.output_format {
        OutputFormat::Csv => emit_csv(w, config, records),
        OutputFormat::Json => emit_json(w, config, records, summary),
    }
}

pub fn emit_csv<W: Write>(mut w: W, config: &ScanConfig, records: &[ScanRecord]) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let kind = config.ineq_kind();
    let signs_apply = matches!(config.kind, ScanKind::Matrix | ScanKind::Entropic);
    let mode_applies = matches!(config.kind, ScanKind::Matrix);
    let mut fields: Vec<String> = Vec::with_capacity(15);
    for record in records {
        fields.clear();
        fields.push(kind.to_string());
        fields.extend(record.angles.iter().map(|&a| sig17(a)));
        if signs_apply {
            fields.extend(config.signs.iter().map(Sign::to_string));
        } else {
            fields.extend(std::iter::repeat_with(String::new).take(3));
        }
        fields.push(if mode_applies {
            config.mode.to_string()
        } else {
            String::new()
        });
        match &record.verdict {
            Some(verdict) => {
                fields.push(verdict.holds.to_string());
                fields.push(sig17(verdict.worst_margin));
                for i in 0..4 {
                    fields.push(
                        verdict
                            .margins
                            .get(i)
                            .map(|&m| sig17(m))
                            .unwrap_or_default(),
                    );
                }
            }
            None => fields.extend(std::iter::repeat_with(String::new).take(6)),
        }
        fields.push(record.status.to_string());
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanDocument<'a> {
    config: &'a ScanConfig,
    records: &'a [ScanRecord],
    summary: &'a ScanSummary,
}

pub fn emit_json<W: Write>(
    mut w: W,
    config: &ScanConfig,
    records: &[ScanRecord],
    summary: &ScanSummary,
) -> Result<()> {
    let doc = ScanDocument {
        config,
        records,
        summary,
    };
    serde_json::to_writer(&mut w, &doc).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    writeln!(w)?;
    Ok(())
}
