//! Domain types shared by every module, and regime classification.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::slog::SignedLogReal;

/// How the Poisson power `m` is tied to the wave-equation power `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// `m = n`, the Gauss-law-consistent choice.
    MEqualsN,
    /// `m = 1`, the ordinary Coulomb Green function.
    MEqualsOne,
    /// `m` given explicitly.
    Explicit,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::MEqualsN => "mn",
            Scheme::MEqualsOne => "m1",
            Scheme::Explicit => "explicit",
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mn" => Ok(Scheme::MEqualsN),
            "m1" => Ok(Scheme::MEqualsOne),
            "explicit" => Ok(Scheme::Explicit),
            other => Err(Error::Parse(format!("unknown scheme {other:?}"))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Space dimension `D`, wave-equation power `n` and Poisson power `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemParams {
    d: u32,
    n: u32,
    m: u32,
    scheme: Scheme,
}

impl SystemParams {
    pub fn new(d: u32, n: u32, m: u32, scheme: Scheme) -> Result<Self> {
        if d < 2 {
            return Err(InvalidReason::DimensionTooSmall.into());
        }
        if n < 1 || m < 1 {
            return Err(InvalidReason::PowerTooSmall.into());
        }
        match scheme {
            Scheme::MEqualsN if m != n => Err(InvalidReason::SchemeMismatch.into()),
            Scheme::MEqualsOne if m != 1 => Err(InvalidReason::SchemeMismatch.into()),
            _ => Ok(Self { d, n, m, scheme }),
        }
    }

    pub fn m_equals_n(d: u32, n: u32) -> Result<Self> {
        Self::new(d, n, n, Scheme::MEqualsN)
    }

    pub fn m_equals_one(d: u32, n: u32) -> Result<Self> {
        Self::new(d, n, 1, Scheme::MEqualsOne)
    }

    pub fn explicit(d: u32, n: u32, m: u32) -> Result<Self> {
        Self::new(d, n, m, Scheme::Explicit)
    }

    /// Builds params for a scheme; `m` is only consulted for [`Scheme::Explicit`].
    pub fn for_scheme(d: u32, n: u32, scheme: Scheme, m: Option<u32>) -> Result<Self> {
        match scheme {
            Scheme::MEqualsN => Self::m_equals_n(d, n),
            Scheme::MEqualsOne => Self::m_equals_one(d, n),
            Scheme::Explicit => {
                let m = m.ok_or(Error::Invalid(InvalidReason::MissingPoissonPower))?;
                Self::explicit(d, n, m)
            }
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Decay exponent `D - 2m` of the potential.
    pub fn beta(&self) -> i64 {
        i64::from(self.d) - 2 * i64::from(self.m)
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self.d, self.n, self.m)
    }
}

/// Machine-readable reason attached to invalid outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvalidReason {
    DimensionTooSmall,
    PowerTooSmall,
    SchemeMismatch,
    MissingPoissonPower,
    /// `D - 2m < 0`: the potential does not vanish at infinity.
    ShortRange,
    NegativeExponent,
    /// Even Poisson power makes the coupling repulsive.
    RepulsiveCoupling,
    /// The printed closed form has a negative or zero bracket base.
    PrintedFormUndefined,
    NonNegativeEnergy,
    OutsideWindow,
}

impl InvalidReason {
    const ALL: [InvalidReason; 10] = [
        InvalidReason::DimensionTooSmall,
        InvalidReason::PowerTooSmall,
        InvalidReason::SchemeMismatch,
        InvalidReason::MissingPoissonPower,
        InvalidReason::ShortRange,
        InvalidReason::NegativeExponent,
        InvalidReason::RepulsiveCoupling,
        InvalidReason::PrintedFormUndefined,
        InvalidReason::NonNegativeEnergy,
        InvalidReason::OutsideWindow,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            InvalidReason::DimensionTooSmall => "dimension-too-small",
            InvalidReason::PowerTooSmall => "power-too-small",
            InvalidReason::SchemeMismatch => "scheme-mismatch",
            InvalidReason::MissingPoissonPower => "missing-m",
            InvalidReason::ShortRange => "short-range",
            InvalidReason::NegativeExponent => "negative-exponent",
            InvalidReason::RepulsiveCoupling => "repulsive-coupling",
            InvalidReason::PrintedFormUndefined => "printed-form-undefined",
            InvalidReason::NonNegativeEnergy => "non-negative-energy",
            InvalidReason::OutsideWindow => "outside-window",
        }
    }

    pub fn message(&self) -> &'static str {
        match self {
            InvalidReason::DimensionTooSmall => "space dimension D must be at least 2",
            InvalidReason::PowerTooSmall => "Laplacian powers n and m must be at least 1",
            InvalidReason::SchemeMismatch => "m does not match the coupling scheme",
            InvalidReason::MissingPoissonPower => "explicit scheme requires m",
            InvalidReason::ShortRange => "D - 2m < 0: potential is not long-range",
            InvalidReason::NegativeExponent => "decay exponent beta must be non-negative",
            InvalidReason::RepulsiveCoupling => "even Poisson power gives a repulsive potential",
            InvalidReason::PrintedFormUndefined => {
                "printed closed form undefined: bracket base n(D/2)^(2n)/(D/2-n) is not positive"
            }
            InvalidReason::NonNegativeEnergy => "energy must be strictly negative",
            InvalidReason::OutsideWindow => "dimension outside the feasibility window",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.code() == code)
    }
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.message(), self.code())
    }
}

/// Classification of a parameter point before any energy is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    BoundEligible,
    Divergent,
    Singular,
    Repulsive,
    Logarithmic,
    Invalid(InvalidReason),
}

/// Regime of the point `(D, n, m)`.
///
/// Cases are checked in order: short range, logarithmic (`D = 2m`),
/// repulsive (even `m`), divergent (`beta = 2n`), singular (`beta > 2n`).
pub fn classify_regime(d: u32, n: u32, m: u32) -> Regime {
    if d < 2 {
        return Regime::Invalid(InvalidReason::DimensionTooSmall);
    }
    if n < 1 || m < 1 {
        return Regime::Invalid(InvalidReason::PowerTooSmall);
    }
    let beta = i64::from(d) - 2 * i64::from(m);
    let two_n = 2 * i64::from(n);
    if beta < 0 {
        Regime::Invalid(InvalidReason::ShortRange)
    } else if beta == 0 {
        Regime::Logarithmic
    } else if m % 2 == 0 {
        Regime::Repulsive
    } else if beta == two_n {
        Regime::Divergent
    } else if beta > two_n {
        Regime::Singular
    } else {
        Regime::BoundEligible
    }
}

/// Nature of the generalized Coulomb potential `alpha / r^beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Nature {
    Attractive,
    Repulsive,
    Logarithmic,
}

impl Nature {
    pub fn as_str(&self) -> &'static str {
        match self {
            Nature::Attractive => "attractive",
            Nature::Repulsive => "repulsive",
            Nature::Logarithmic => "logarithmic",
        }
    }
}

/// Coupling and decay exponent of the potential `V(r) = alpha / r^beta`.
///
/// `alpha` is `None` in the logarithmic case `beta = 0`, where the
/// power-law coefficient has a gamma pole.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialSpec {
    pub alpha: Option<SignedLogReal>,
    pub beta: i64,
    pub nature: Nature,
}

/// Result of a ground-state energy evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EnergyOutcome {
    /// Bound ground state; energy in hartree, always negative.
    Bound(SignedLogReal),
    Divergent,
    Singular,
    Repulsive,
    Logarithmic,
    Invalid(InvalidReason),
}

impl EnergyOutcome {
    /// Wraps a negative energy; anything else is reported as invalid.
    pub fn bound(e: SignedLogReal) -> Self {
        if e.is_negative() && e.lnmag().is_finite() {
            EnergyOutcome::Bound(e)
        } else {
            EnergyOutcome::Invalid(InvalidReason::NonNegativeEnergy)
        }
    }

    pub fn energy(&self) -> Option<SignedLogReal> {
        match self {
            EnergyOutcome::Bound(e) => Some(*e),
            _ => None,
        }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, EnergyOutcome::Bound(_))
    }

    /// Non-bound outcome matching a regime tag; `None` for `BoundEligible`.
    pub fn from_regime(regime: Regime) -> Option<Self> {
        match regime {
            Regime::BoundEligible => None,
            Regime::Divergent => Some(EnergyOutcome::Divergent),
            Regime::Singular => Some(EnergyOutcome::Singular),
            Regime::Repulsive => Some(EnergyOutcome::Repulsive),
            Regime::Logarithmic => Some(EnergyOutcome::Logarithmic),
            Regime::Invalid(r) => Some(EnergyOutcome::Invalid(r)),
        }
    }

    /// Classification label used in CSV/JSON output, e.g. `bound` or
    /// `invalid:short-range`.
    pub fn label(&self) -> String {
        match self {
            EnergyOutcome::Bound(_) => "bound".into(),
            EnergyOutcome::Divergent => "divergent".into(),
            EnergyOutcome::Singular => "singular".into(),
            EnergyOutcome::Repulsive => "repulsive".into(),
            EnergyOutcome::Logarithmic => "logarithmic".into(),
            EnergyOutcome::Invalid(r) => format!("invalid:{}", r.code()),
        }
    }

    /// Inverse of [`EnergyOutcome::label`]; bound outcomes need the energy.
    pub fn from_label(label: &str, energy: Option<SignedLogReal>) -> Result<Self> {
        let outcome = match label {
            "bound" => {
                let e = energy
                    .ok_or_else(|| Error::Parse("bound record without energy".into()))?;
                if !e.is_negative() {
                    return Err(Error::Parse("bound record with non-negative energy".into()));
                }
                EnergyOutcome::Bound(e)
            }
            "divergent" => EnergyOutcome::Divergent,
            "singular" => EnergyOutcome::Singular,
            "repulsive" => EnergyOutcome::Repulsive,
            "logarithmic" => EnergyOutcome::Logarithmic,
            other => {
                let code = other
                    .strip_prefix("invalid:")
                    .ok_or_else(|| Error::Parse(format!("unknown classification {other:?}")))?;
                let reason = InvalidReason::from_code(code)
                    .ok_or_else(|| Error::Parse(format!("unknown invalid reason {code:?}")))?;
                EnergyOutcome::Invalid(reason)
            }
        };
        Ok(outcome)
    }
}

/// Which evaluator produced a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// General leading-order closed form in `(alpha, beta, n, D)`.
    General,
    /// Printed closed form for the `m = n` scheme.
    PrintedMn,
    /// Printed closed form for the `m = 1` scheme.
    PrintedM1,
    OracleVeff,
    OracleRadial,
}

impl Formula {
    pub fn tag(&self) -> &'static str {
        match self {
            Formula::General => "Eq2",
            Formula::PrintedMn => "Eq6",
            Formula::PrintedM1 => "Eq9",
            Formula::OracleVeff => "OracleVeff",
            Formula::OracleRadial => "OracleRadial",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "Eq2" => Ok(Formula::General),
            "Eq6" => Ok(Formula::PrintedMn),
            "Eq9" => Ok(Formula::PrintedM1),
            "OracleVeff" => Ok(Formula::OracleVeff),
            "OracleRadial" => Ok(Formula::OracleRadial),
            other => Err(Error::Parse(format!("unknown formula tag {other:?}"))),
        }
    }
}

/// One evaluated grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub params: SystemParams,
    pub beta: i64,
    pub alpha: Option<SignedLogReal>,
    pub outcome: EnergyOutcome,
    pub formula: Formula,
    pub paper_value: Option<SignedLogReal>,
}

impl ScanRecord {
    /// `log10(computed / reference)` when both energies exist.
    pub fn ratio_log10(&self) -> Option<f64> {
        let e = self.outcome.energy()?;
        let p = self.paper_value?;
        if p.is_zero() {
            return None;
        }
        Some(e.log10mag() - p.log10mag())
    }
}
