//! Bound-state ground energies of a hydrogen atom described by
//! `(-1)^n Δ^n ψ - α r^(-β) ψ = E ψ` in `D` space dimensions.
//!
//! The coupling `α(D, m)` and exponent `β = D - 2m` come from the Green
//! function of the iterated Laplacian `Δ^m`. Energies are the leading order
//! of the 1/N expansion, checked against direct minimization of the
//! effective potential and, for `n = 1`, a Numerov eigensolver.
//!
//! All energies are carried as [`SignedLogReal`] so values far below the
//! double range (`-1e-159` at `D = 19, n = 5`) stay exact.

pub mod cli;
pub mod error;
pub mod feasibility;
pub mod model;
pub mod oracle;
pub mod potential;
pub mod report;
pub mod slog;
pub mod spectrum;

pub use error::{Error, Result};
pub use model::{
    classify_regime, EnergyOutcome, Formula, InvalidReason, Nature, PotentialSpec, Regime,
    ScanRecord, Scheme, SystemParams,
};
pub use slog::SignedLogReal;
