//! Independent numerical checks of the closed-form energies.
//!
//! [`minimize_v_eff`] finds the minimum of the leading-order effective
//! potential by direct search; the closed form must reproduce it.
//! [`radial_ground_state`] solves the `n = 1` radial equation with Numerov
//! shooting.

pub mod golden;
pub mod radial;

pub use radial::{radial_ground_state, KineticConvention, RadialSolution};

use crate::error::{Error, Result};
use crate::slog::SignedLogReal;
use crate::spectrum::EnergyQuery;

use golden::{bracket_minimum, golden_section_by};

/// `V_eff(r) = A r^(-2n) - alpha r^(-beta)` with `A = (D/2)^(2n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectivePotential {
    pub centrifugal: SignedLogReal,
    pub alpha: SignedLogReal,
    pub beta: i64,
    pub n: u32,
}

/// `ln|e^t - 1|`, stable for large `|t|`.
fn ln_abs_expm1(t: f64) -> f64 {
    if t > 0.0 {
        t + (-(-t).exp_m1()).ln()
    } else {
        (-t.exp_m1()).ln()
    }
}

impl EffectivePotential {
    pub fn from_query(q: &EnergyQuery) -> Self {
        let half_d = SignedLogReal::ratio(i64::from(q.d), 2);
        Self {
            centrifugal: half_d.powi(2 * i64::from(q.n)),
            alpha: q.alpha,
            beta: q.beta,
            n: q.n,
        }
    }

    fn two_n(&self) -> f64 {
        2.0 * f64::from(self.n)
    }

    /// `V_eff` at `r = exp(ln_r)`.
    pub fn value_at_ln_r(&self, ln_r: f64) -> SignedLogReal {
        let kinetic = SignedLogReal::from_ln(self.centrifugal.lnmag() - self.two_n() * ln_r);
        let attraction = self.alpha * SignedLogReal::from_ln(-(self.beta as f64) * ln_r);
        kinetic - attraction
    }

    /// Whether `V_eff(e^x1) < V_eff(e^x2)`.
    ///
    /// Each term's change is written as `term(x2) * expm1(-p (x1 - x2))`,
    /// so the comparison does not lose the first-order cancellation near
    /// the minimum.
    pub fn less_at(&self, x1: f64, x2: f64) -> bool {
        let s = x1 - x2;
        if s == 0.0 {
            return false;
        }
        let beta = self.beta as f64;
        // Magnitudes of the kinetic and attraction changes; both changes
        // have the sign of -s for the kinetic term and of +s for the
        // attraction term (which enters with a minus).
        let ln_kinetic = self.centrifugal.lnmag() - self.two_n() * x2 + ln_abs_expm1(-self.two_n() * s);
        let ln_attr = self.alpha.lnmag() - beta * x2 + ln_abs_expm1(-beta * s);
        // diff = sgn(-s) * (|kinetic| - |attr|)
        if s > 0.0 {
            ln_attr < ln_kinetic
        } else {
            ln_kinetic < ln_attr
        }
    }

    /// `ln r` where the two terms have equal magnitude: `r^(2n-beta) = A/alpha`.
    pub fn crossover_ln_r(&self) -> f64 {
        (self.centrifugal.lnmag() - self.alpha.lnmag()) / (self.two_n() - self.beta as f64)
    }

    /// Stationary point from `dV/dr = 0`: `r^(2n-beta) = 2n A / (alpha beta)`.
    pub fn stationary_ln_r_closed_form(&self) -> f64 {
        (self.two_n().ln() + self.centrifugal.lnmag() - self.alpha.lnmag() - (self.beta as f64).ln())
            / (self.two_n() - self.beta as f64)
    }
}

/// Minimum of the effective potential found by search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VeffMinimum {
    /// Minimizer `r*` in bohr.
    pub r_star: f64,
    pub ln_r_star: f64,
    /// `V_eff(r*)` in hartree.
    pub e_min: SignedLogReal,
    /// Closed-form stationary point, for cross-checking.
    pub ln_r_closed_form: f64,
    pub iterations: usize,
}

impl VeffMinimum {
    /// Relative difference between the searched and closed-form `r*`.
    pub fn r_star_rel_deviation(&self) -> f64 {
        (self.ln_r_star - self.ln_r_closed_form).exp_m1().abs()
    }
}

/// Tolerance on the golden-section bracket, relative in `ln r`.
pub const LN_R_TOL: f64 = 1e-12;

/// Minimizes `V_eff` by bracketing and golden-section search in `ln r`.
pub fn minimize_v_eff(q: &EnergyQuery) -> Result<VeffMinimum> {
    let two_n = 2 * i64::from(q.n);
    if q.n < 1 || q.d < 2 {
        return Err(Error::NoMinimum("n ≥ 1 and D ≥ 2 required".into()));
    }
    if !q.alpha.is_positive() {
        return Err(Error::NoMinimum("coupling is not attractive".into()));
    }
    if q.beta <= 0 {
        return Err(Error::NoMinimum("beta must be positive".into()));
    }
    if q.beta >= two_n {
        return Err(Error::NoMinimum(format!(
            "beta = {} ≥ 2n = {two_n}: profile has no interior minimum",
            q.beta
        )));
    }
    let v = EffectivePotential::from_query(q);
    let less = |a: f64, b: f64| v.less_at(a, b);
    let (lo, hi) = bracket_minimum(v.crossover_ln_r(), 1.0, 64, less)
        .ok_or_else(|| Error::NoMinimum("bracket expansion failed".into()))?;
    let res = golden_section_by(lo, hi, LN_R_TOL, 500, less);
    Ok(VeffMinimum {
        r_star: res.x.exp(),
        ln_r_star: res.x,
        e_min: v.value_at_ln_r(res.x),
        ln_r_closed_form: v.stationary_ln_r_closed_form(),
        iterations: res.iterations,
    })
}
