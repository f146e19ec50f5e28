//! Numerov shooting for the `n = 1` radial equation
//!
//! ```text
//! -K [u'' - c u / r^2] - alpha r^(-beta) u = E u,   c = (D-1)(D-3)/4
//! ```
//!
//! with `K = 1` for the literal `-Δ` kinetic term and `K = 1/2` for the
//! conventional `-Δ/2`. Eigenvalues are located by bisection on the node
//! count of the outward solution.

use crate::error::{Error, Result};
use crate::model::InvalidReason;
use crate::slog::SignedLogReal;
use crate::spectrum::{e0_general, EnergyQuery};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KineticConvention {
    /// `-Δ`
    FullLaplacian,
    /// `-Δ/2`
    HalfLaplacian,
}

impl KineticConvention {
    /// Factor multiplying `(V - E)` in `u'' = k(r) u`.
    fn scale(&self) -> f64 {
        match self {
            KineticConvention::FullLaplacian => 1.0,
            KineticConvention::HalfLaplacian => 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialSolution {
    /// Uniform mesh in bohr, starting at `r = 0`.
    pub grid: Vec<f64>,
    /// Reduced radial wavefunction, normalized to `∫ u² dr = 1`.
    pub u: Vec<f64>,
    /// Eigenvalue in hartree.
    pub energy: f64,
    pub nodes: usize,
    pub kinetic_convention: KineticConvention,
}

/// Mesh and convergence settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialConfig {
    pub step: f64,
    /// First box radius tried; doubled until the eigenvalue settles.
    pub r_max_initial: f64,
    pub r_max_limit: f64,
    /// Eigenvalue change between box doublings accepted as converged.
    pub box_tol: f64,
    /// Bisection stops when the energy bracket is narrower than this.
    pub energy_tol: f64,
}

impl Default for RadialConfig {
    fn default() -> Self {
        Self {
            step: 1e-3,
            r_max_initial: 20.0,
            r_max_limit: 2000.0,
            box_tol: 1e-8,
            energy_tol: 1e-11,
        }
    }
}

struct Problem {
    /// `(D-1)/2`, the leading power of the regular solution.
    nu: f64,
    centrifugal: f64,
    alpha: f64,
    beta: f64,
    scale: f64,
}

impl Problem {
    fn k(&self, r: f64, e: f64) -> f64 {
        self.centrifugal / (r * r) + self.scale * (-self.alpha * r.powf(-self.beta) - e)
    }

    /// Two-term regular expansion `r^nu (1 - s alpha r / (2 nu))`.
    fn regular_start(&self, r: f64) -> f64 {
        r.powf(self.nu) * (1.0 - self.scale * self.alpha * r / (2.0 * self.nu))
    }

    /// Integrates outward on `r_i = i h`, `i = 0..=steps`. Returns `u` and
    /// its number of sign changes.
    fn integrate(&self, e: f64, h: f64, steps: usize, keep: bool) -> (Vec<f64>, usize) {
        let h2 = h * h / 12.0;
        let mut u = if keep { vec![0.0; steps + 1] } else { Vec::new() };
        let mut prev = self.regular_start(h);
        let mut cur = self.regular_start(2.0 * h);
        if keep {
            u[1] = prev;
            u[2] = cur;
        }
        let mut nodes = usize::from(prev.signum() != cur.signum());
        let mut k_prev = self.k(h, e);
        let mut k_cur = self.k(2.0 * h, e);
        for i in 2..steps {
            let r_next = (i + 1) as f64 * h;
            let k_next = self.k(r_next, e);
            let next = (2.0 * (1.0 + 5.0 * h2 * k_cur) * cur - (1.0 - h2 * k_prev) * prev)
                / (1.0 - h2 * k_next);
            if next != 0.0 && cur != 0.0 && next.signum() != cur.signum() {
                nodes += 1;
            }
            prev = cur;
            cur = next;
            k_prev = k_cur;
            k_cur = k_next;
            if keep {
                u[i + 1] = next;
            }
            if cur.abs() > 1e150 {
                prev *= 1e-150;
                cur *= 1e-150;
                if keep {
                    u[..=i + 1].iter_mut().for_each(|x| *x *= 1e-150);
                }
            }
        }
        (u, nodes)
    }

    /// Bisection for the level with `excitation` nodes in a box of radius
    /// `r_max`; returns the lower end of the final bracket.
    fn eigenvalue(&self, excitation: usize, lo: f64, hi: f64, r_max: f64, cfg: &RadialConfig) -> Result<f64> {
        let steps = (r_max / cfg.step).round() as usize;
        let count = |e: f64| self.integrate(e, cfg.step, steps, false).1;
        if count(lo) > excitation || count(hi) <= excitation {
            return Err(Error::NoConvergence(format!(
                "energy bracket [{lo}, {hi}] does not straddle level {excitation}"
            )));
        }
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..200 {
            if hi - lo <= cfg.energy_tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if count(mid) > excitation {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(lo)
    }

    /// Index past which the outward solution stops decaying: the first rise
    /// in `|u|` beyond the outer classical turning point.
    fn tail_cut(&self, u: &[f64], e: f64, h: f64) -> usize {
        let turning = (1..u.len())
            .rev()
            .find(|&i| self.k(i as f64 * h, e) < 0.0)
            .unwrap_or(1);
        (turning..u.len() - 1)
            .find(|&i| u[i + 1].abs() >= u[i].abs())
            .unwrap_or(u.len() - 1)
    }
}

fn count_sign_changes(u: &[f64]) -> usize {
    let mut nodes = 0;
    let mut prev = 0.0f64;
    for &x in u {
        if x != 0.0 {
            if prev != 0.0 && x.signum() != prev.signum() {
                nodes += 1;
            }
            prev = x;
        }
    }
    nodes
}

/// Eigenstate with `excitation` radial nodes of the `n = 1` equation.
pub fn radial_ground_state(
    d: u32,
    alpha: f64,
    beta: i64,
    convention: KineticConvention,
    excitation: usize,
) -> Result<RadialSolution> {
    radial_solve(d, alpha, beta, convention, excitation, &RadialConfig::default())
}

pub fn radial_solve(
    d: u32,
    alpha: f64,
    beta: i64,
    convention: KineticConvention,
    excitation: usize,
    cfg: &RadialConfig,
) -> Result<RadialSolution> {
    if d < 2 {
        return Err(InvalidReason::DimensionTooSmall.into());
    }
    if beta <= 0 {
        return Err(InvalidReason::NegativeExponent.into());
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(InvalidReason::RepulsiveCoupling.into());
    }
    if beta >= 2 {
        return Err(Error::Singular(format!(
            "beta = {beta} ≥ 2 is not Coulomb-regular at the origin"
        )));
    }
    let nu = (f64::from(d) - 1.0) / 2.0;
    let problem = Problem {
        nu,
        centrifugal: nu * (nu - 1.0),
        alpha,
        beta: beta as f64,
        scale: convention.scale(),
    };

    let e0 = e0_general(&EnergyQuery::new(SignedLogReal::from_f64(alpha), beta, 1, d))
        .energy()
        .ok_or_else(|| Error::NoConvergence("no closed-form estimate for the bracket".into()))?
        .to_f64();
    let lo = -2.0 * e0.abs() * 1e3;
    let hi = -1e-8;

    let mut r_max = cfg.r_max_initial * (excitation as f64 + 1.0);
    let mut energy = problem.eigenvalue(excitation, lo, hi, r_max, cfg)?;
    loop {
        let next_r = 2.0 * r_max;
        if next_r > cfg.r_max_limit {
            return Err(Error::NoConvergence(format!(
                "eigenvalue not stable before r_max = {}",
                cfg.r_max_limit
            )));
        }
        let next = problem.eigenvalue(excitation, lo, hi, next_r, cfg)?;
        let shift = (next - energy).abs();
        r_max = next_r;
        energy = next;
        if shift < cfg.box_tol {
            break;
        }
    }

    let steps = (r_max / cfg.step).round() as usize;
    let (mut u, _) = problem.integrate(energy, cfg.step, steps, true);
    let cut = problem.tail_cut(&u, energy, cfg.step);
    u.truncate(cut + 1);
    let nodes = count_sign_changes(&u);
    let norm = (u.iter().map(|x| x * x).sum::<f64>() * cfg.step).sqrt();
    u.iter_mut().for_each(|x| *x /= norm);
    let grid = (0..u.len()).map(|i| i as f64 * cfg.step).collect();
    Ok(RadialSolution {
        grid,
        u,
        energy,
        nodes,
        kinetic_convention: convention,
    })
}
