//! Spin-measurement density matrices, matrix-logarithm entropies, and
//! empirical maps of Bell-type inequalities.
//!
//! The library builds 2x2 density matrices for Stern-Gerlach-style spin
//! measurements along arbitrary axes, mixes them, and pushes them through
//! an explicit eigendecomposition / matrix-logarithm pipeline to obtain
//! von Neumann and thermodynamic entropies. On top of that sit four
//! Bell-type inequality checkers (a probabilistic chaining form, an
//! entrywise and a positive-semidefinite matrix form, an entropic form,
//! and a conditional-entropy chaining form) plus a scan engine that maps
//! where each one holds or fails across measurement-angle space.
//!
//! Modules:
//!
//! * [`mat2`] — a small fixed-size complex 2x2 matrix type.
//! * [`qstate`] — measurement axes, spin kets, density matrices, mixtures.
//! * [`matlog`] — eigendecomposition, matrix log/exp, invertibility.
//! * [`entropy`] — von Neumann, thermodynamic, and classical entropies.
//! * [`inequality`] — single-point inequality verdicts.
//! * [`scan`] — angle-grid sweeps and CSV/JSON artifact emission.
//! * [`cli`] — the `belltropy` command-line tool.

pub mod cli;
pub mod entropy;
pub mod error;
pub mod inequality;
pub mod mat2;
pub mod matlog;
pub mod qstate;
pub mod scan;

pub use error::{Error, Result};
