//! Leading-order 1/N ground-state energies.
//!
//! [`e0_general`] is the canonical evaluator. [`e0_scheme_mn`] and
//! [`e0_scheme_m1`] evaluate the scheme-specific closed forms exactly as they
//! are usually printed; they exist to be cross-checked against the general
//! form, not to be trusted on their own.

use crate::error::{Error, Result};
use crate::model::{classify_regime, EnergyOutcome, InvalidReason, Regime};
use crate::potential::alpha_coefficient;
use crate::slog::SignedLogReal;

/// Inputs to the general evaluator: coupling `alpha` (hartree·bohr^beta),
/// decay exponent `beta`, Laplacian power `n` and dimension `D`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyQuery {
    pub alpha: SignedLogReal,
    pub beta: i64,
    pub n: u32,
    pub d: u32,
}

impl EnergyQuery {
    pub fn new(alpha: SignedLogReal, beta: i64, n: u32, d: u32) -> Self {
        Self { alpha, beta, n, d }
    }

    /// Query for the point `(D, n, m)` with `alpha = alpha(D, m)`.
    ///
    /// Fails where the coefficient is undefined (short range or `D = 2m`).
    pub fn from_green_function(d: u32, n: u32, m: u32) -> Result<Self> {
        let pot = alpha_coefficient(d, m)?;
        let alpha = pot.alpha.ok_or(Error::Invalid(InvalidReason::NegativeExponent))?;
        Ok(Self::new(alpha, pot.beta, n, d))
    }
}

/// `E0 = -alpha (2n-beta)/(2n) D^(-2n beta/(2n-beta)) (2n/(2^(2n) alpha beta))^(-beta/(2n-beta))`.
pub fn e0_general(q: &EnergyQuery) -> EnergyOutcome {
    if q.d < 2 {
        return EnergyOutcome::Invalid(InvalidReason::DimensionTooSmall);
    }
    if q.n < 1 {
        return EnergyOutcome::Invalid(InvalidReason::PowerTooSmall);
    }
    if q.beta < 0 {
        return EnergyOutcome::Invalid(InvalidReason::NegativeExponent);
    }
    if q.beta == 0 {
        return EnergyOutcome::Logarithmic;
    }
    if !q.alpha.is_positive() {
        return EnergyOutcome::Repulsive;
    }
    let two_n = 2 * i64::from(q.n);
    let gap = two_n - q.beta;
    if gap == 0 {
        return EnergyOutcome::Divergent;
    }
    if gap < 0 {
        return EnergyOutcome::Singular;
    }

    let dim = SignedLogReal::from_f64(f64::from(q.d));
    let beta = SignedLogReal::from_f64(q.beta as f64);
    let coupling_scale = SignedLogReal::from_f64(two_n as f64)
        / (SignedLogReal::from_f64(2.0).powi(two_n) * q.alpha * beta);
    // All factors are positive here, so the rational powers are defined.
    let dim_factor = dim.pow_ratio(two_n * q.beta, gap).expect("positive base");
    let scale_factor = coupling_scale.pow_ratio(q.beta, gap).expect("positive base");
    let e = -(q.alpha / (dim_factor * scale_factor) * SignedLogReal::ratio(gap, two_n));
    EnergyOutcome::bound(e)
}

fn non_bound(regime: Regime) -> Option<EnergyOutcome> {
    EnergyOutcome::from_regime(regime)
}

/// Shared shape of the two printed scheme formulas:
/// `-[n (D/2)^(2n) / (D/2 - n)]^(a/b) * alpha^(-2n/b) * (4n - D)/(2n)`,
/// with `a = D - 2n` and `b` the scheme-specific denominator (twice the
/// printed one, so everything stays integral).
fn printed_form(d: u32, n: u32, alpha: SignedLogReal, exp_den: i64) -> EnergyOutcome {
    let d_i = i64::from(d);
    let n_i = i64::from(n);
    let base_den = d_i - 2 * n_i;
    if base_den <= 0 {
        return EnergyOutcome::Invalid(InvalidReason::PrintedFormUndefined);
    }
    // n (D/2)^(2n) / ((D - 2n)/2)
    let base = SignedLogReal::from_f64(n as f64)
        * SignedLogReal::ratio(d_i, 2).powi(2 * n_i)
        / SignedLogReal::ratio(base_den, 2);
    let Some(bracket) = base.pow_ratio(base_den, exp_den) else {
        return EnergyOutcome::Invalid(InvalidReason::PrintedFormUndefined);
    };
    let Some(coupling) = alpha.pow_ratio(-2 * n_i, exp_den) else {
        return EnergyOutcome::Invalid(InvalidReason::PrintedFormUndefined);
    };
    let trailing = SignedLogReal::ratio(4 * n_i - d_i, 2 * n_i);
    EnergyOutcome::bound(-(bracket * coupling * trailing))
}

/// Printed closed form for the `m = n` scheme, evaluated on `2n < D < 4n`.
pub fn e0_scheme_mn(d: u32, n: u32) -> EnergyOutcome {
    if n >= 1 && n % 2 == 0 {
        return EnergyOutcome::Invalid(InvalidReason::RepulsiveCoupling);
    }
    if let Some(tag) = non_bound(classify_regime(d, n, n)) {
        return tag;
    }
    let alpha = match alpha_coefficient(d, n) {
        Ok(p) => p.alpha.expect("bound-eligible points have a coefficient"),
        Err(Error::Invalid(r)) => return EnergyOutcome::Invalid(r),
        Err(_) => return EnergyOutcome::Invalid(InvalidReason::ShortRange),
    };
    // exponent denominator D/2 - 2n, doubled
    printed_form(d, n, alpha, i64::from(d) - 4 * i64::from(n))
}

/// Printed closed form for the `m = 1` scheme.
///
/// Only `D > 2n` gives a positive bracket base; inside the window
/// `2 < D < 2(n+1)` that leaves `D = 2n + 1`. Every other window point is
/// reported as [`InvalidReason::PrintedFormUndefined`].
pub fn e0_scheme_m1(d: u32, n: u32) -> EnergyOutcome {
    if let Some(tag) = non_bound(classify_regime(d, n, 1)) {
        return tag;
    }
    let alpha = match alpha_coefficient(d, 1) {
        Ok(p) => p.alpha.expect("bound-eligible points have a coefficient"),
        Err(Error::Invalid(r)) => return EnergyOutcome::Invalid(r),
        Err(_) => return EnergyOutcome::Invalid(InvalidReason::ShortRange),
    };
    // exponent denominator D/2 - n - 1, doubled
    printed_form(d, n, alpha, i64::from(d) - 2 * i64::from(n) - 2)
}

/// The `m = 1` energy from the general form with `beta = D - 2` and
/// `alpha = alpha(D, 1)`; defined on the whole window.
pub fn e0_scheme_m1_rederived(d: u32, n: u32) -> EnergyOutcome {
    if let Some(tag) = non_bound(classify_regime(d, n, 1)) {
        return tag;
    }
    match EnergyQuery::from_green_function(d, n, 1) {
        Ok(q) => e0_general(&q),
        Err(Error::Invalid(r)) => EnergyOutcome::Invalid(r),
        Err(_) => EnergyOutcome::Invalid(InvalidReason::ShortRange),
    }
}

/// One point where the printed `m = 1` form disagrees with the general form.
#[derive(Clone, Debug, PartialEq)]
pub struct M1Discrepancy {
    pub d: u32,
    pub n: u32,
    pub printed: EnergyOutcome,
    pub rederived: EnergyOutcome,
    /// `ln|printed| - ln|rederived|` when both are bound.
    pub ln_ratio: Option<f64>,
}

/// Compares the printed `m = 1` form with the general form over the `m = 1`
/// windows for `n` in `1..=max_n` and lists every disagreement.
pub fn m1_discrepancy_report(max_n: u32) -> Vec<M1Discrepancy> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for d in 3..(2 * n + 2) {
            let printed = e0_scheme_m1(d, n);
            let rederived = e0_scheme_m1_rederived(d, n);
            let ln_ratio = match (printed.energy(), rederived.energy()) {
                (Some(p), Some(r)) => Some(p.lnmag() - r.lnmag()),
                _ => None,
            };
            let agree = match ln_ratio {
                Some(x) => x.abs() <= 1e-10,
                None => printed == rederived,
            };
            if !agree {
                out.push(M1Discrepancy {
                    d,
                    n,
                    printed,
                    rederived,
                    ln_ratio,
                });
            }
        }
    }
    out
}

/// Principal quantum number of the standard hydrogen level `-1/(2k^2)` that
/// has the same energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumNumber {
    pub k_star: f64,
    /// `k_star` rounded half away from zero.
    pub nearest: u64,
}

pub fn effective_quantum_number(e: SignedLogReal) -> Result<QuantumNumber> {
    if !e.is_negative() {
        return Err(InvalidReason::NonNegativeEnergy.into());
    }
    // k = (2|E|)^(-1/2)
    let k = (SignedLogReal::from_f64(2.0) * e.abs())
        .pow_ratio(-1, 2)
        .expect("positive base")
        .to_f64();
    Ok(QuantumNumber {
        k_star: k,
        nearest: k.round() as u64,
    })
}
