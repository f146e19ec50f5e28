//! Bound-state windows over `(D, n)` and grid scans.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{classify_regime, EnergyOutcome, Formula, Regime, ScanRecord, Scheme, SystemParams};
use crate::potential::alpha_coefficient;
use crate::report::paper_value;
use crate::spectrum::{e0_general, EnergyQuery};

/// Environment variable capping the scan worker pool.
pub const THREADS_ENV: &str = "DIMSPEC_THREADS";

/// Dimensions admitting a bound state for one `n` and scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityWindow {
    pub n: u32,
    pub scheme: Scheme,
    /// Exclusive lower end.
    pub d_min: u32,
    /// Exclusive upper end.
    pub d_max: u32,
    pub members: Vec<u32>,
}

impl FeasibilityWindow {
    /// Dimensions the literature states for this window, where it states any.
    pub fn published_members(&self) -> Option<Vec<u32>> {
        match (self.scheme, self.n) {
            (Scheme::MEqualsN, 1) => Some(vec![3]),
            (Scheme::MEqualsN, 3) => Some(vec![7, 8, 9, 10, 11]),
            (Scheme::MEqualsOne, 3) => Some(vec![3, 5, 6, 7]),
            _ => None,
        }
    }

    /// Members admitted by the inequality but missing from the published list.
    pub fn paper_omitted(&self) -> Vec<u32> {
        match self.published_members() {
            Some(listed) => self
                .members
                .iter()
                .copied()
                .filter(|d| !listed.contains(d))
                .collect(),
            None => Vec::new(),
        }
    }
}

/// Open interval of `D` with a bound state: `(2n, 4n)` for `m = n` (empty
/// for even `n`), `(2, 2(n+1))` for `m = 1`.
///
/// [`Scheme::Explicit`] has no single `m` and is treated as `m = n`.
pub fn bound_dims(n: u32, scheme: Scheme) -> FeasibilityWindow {
    let (d_min, d_max, m_of) = match scheme {
        Scheme::MEqualsOne => (2, 2 * (n + 1), 1),
        _ => (2 * n, 4 * n, n),
    };
    let members = ((d_min + 1)..d_max)
        .filter(|&d| classify_regime(d, n, m_of) == Regime::BoundEligible)
        .collect();
    FeasibilityWindow {
        n,
        scheme,
        d_min,
        d_max,
        members,
    }
}

/// Dimensions that never host an `m = n` bound state for any `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalExclusion {
    pub dims: Vec<u32>,
    /// Largest `n` enumerated while verifying.
    pub verified_up_to_n: u32,
}

/// `{4, 5, 6}`, checked against every `m = n` window with `n ≤ 64`.
pub fn excluded_dims_universal() -> UniversalExclusion {
    const MAX_N: u32 = 64;
    let claimed = [4u32, 5, 6];
    let windows: Vec<_> = (1..=MAX_N).map(|n| bound_dims(n, Scheme::MEqualsN)).collect();
    let dims = claimed
        .into_iter()
        .filter(|d| windows.iter().all(|w| !w.members.contains(d)))
        .collect();
    UniversalExclusion {
        dims,
        verified_up_to_n: MAX_N,
    }
}

/// Bounds on the scan grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanLimits {
    pub max_d: u32,
    pub max_n: u32,
}

impl Default for ScanLimits {
    fn default() -> Self {
        Self { max_d: 64, max_n: 16 }
    }
}

/// A rectangular `(D, n)` grid under one scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid {
    pub dims: Vec<u32>,
    pub powers: Vec<u32>,
    pub scheme: Scheme,
    /// Poisson power, required for [`Scheme::Explicit`].
    pub m: Option<u32>,
    pub limits: ScanLimits,
}

impl ScanGrid {
    pub fn new(dims: Vec<u32>, powers: Vec<u32>, scheme: Scheme) -> Self {
        Self {
            dims,
            powers,
            scheme,
            m: None,
            limits: ScanLimits::default(),
        }
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_limits(mut self, limits: ScanLimits) -> Self {
        self.limits = limits;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::InvalidRange("empty D range".into()));
        }
        if self.powers.is_empty() {
            return Err(Error::InvalidRange("empty n range".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d < 2 || d > self.limits.max_d) {
            return Err(Error::InvalidRange(format!(
                "D = {d} outside [2, {}]",
                self.limits.max_d
            )));
        }
        if let Some(&n) = self.powers.iter().find(|&&n| n < 1 || n > self.limits.max_n) {
            return Err(Error::InvalidRange(format!(
                "n = {n} outside [1, {}]",
                self.limits.max_n
            )));
        }
        if self.scheme == Scheme::Explicit && self.m.is_none() {
            return Err(Error::InvalidRange("explicit scheme requires m".into()));
        }
        Ok(())
    }

    /// Grid points ordered by ascending `n`, then ascending `D`.
    fn points(&self) -> Vec<(u32, u32)> {
        let mut dims = self.dims.clone();
        dims.sort_unstable();
        dims.dedup();
        let mut powers = self.powers.clone();
        powers.sort_unstable();
        powers.dedup();
        powers
            .iter()
            .flat_map(|&n| dims.iter().map(move |&d| (d, n)))
            .collect()
    }
}

/// Evaluates one grid point with the general closed form.
pub fn evaluate_point(params: SystemParams) -> ScanRecord {
    let beta = params.beta();
    let (alpha, outcome) = match alpha_coefficient(params.d(), params.m()) {
        Ok(pot) => {
            let outcome = match pot.alpha {
                Some(a) => e0_general(&EnergyQuery::new(a, beta, params.n(), params.d())),
                None => EnergyOutcome::Logarithmic,
            };
            (pot.alpha, outcome)
        }
        Err(_) => (
            None,
            EnergyOutcome::from_regime(params.regime()).unwrap_or(EnergyOutcome::Singular),
        ),
    };
    let paper = if params.m() == params.n() {
        paper_value(params.d(), params.n())
    } else {
        None
    };
    ScanRecord {
        params,
        beta,
        alpha,
        outcome,
        formula: Formula::General,
        paper_value: paper,
    }
}

/// Worker count from [`THREADS_ENV`]; `None` when unset.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Error::InvalidRange(format!(
                "{THREADS_ENV} must be a positive integer, got {s:?}"
            ))),
        },
    }
}

/// Scans the grid using the worker count from the environment.
pub fn scan(grid: &ScanGrid) -> Result<Vec<ScanRecord>> {
    scan_with_threads(grid, threads_from_env()?)
}

/// Scans the grid on a pool of `threads` workers (rayon's default when
/// `None`). Output order does not depend on the worker count.
pub fn scan_with_threads(grid: &ScanGrid, threads: Option<usize>) -> Result<Vec<ScanRecord>> {
    grid.validate()?;
    let points = grid
        .points()
        .into_iter()
        .map(|(d, n)| SystemParams::for_scheme(d, n, grid.scheme, grid.m))
        .collect::<Result<Vec<_>>>()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidRange(format!("worker pool: {e}")))?;
    Ok(pool.install(|| points.into_par_iter().map(evaluate_point).collect()))
}
