//! Generalized Coulomb coefficient `alpha(D, m)`, the Green function
//! normalization of `Δ^m G = -4π δ`, and the half-integer gamma values it
//! needs.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::model::{InvalidReason, Nature, PotentialSpec};
use crate::slog::SignedLogReal;

/// A point `twice / 2` on the half-integer lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub fn from_int(k: i64) -> Self {
        Self { twice: 2 * k }
    }

    pub fn twice(&self) -> i64 {
        self.twice
    }

    pub fn value(&self) -> f64 {
        self.twice as f64 / 2.0
    }
}

fn ln_pi() -> f64 {
    PI.ln()
}

/// `ln Γ(x)` on the positive half-integer lattice by exact recurrence:
/// `Γ(1) = 1`, `Γ(1/2) = √π`, `Γ(x + 1) = x Γ(x)`, summed in log space.
pub fn log_gamma_half(x: HalfInteger) -> Result<f64> {
    if x.twice <= 0 {
        return Err(Error::GammaPole { twice: x.twice });
    }
    let mut acc = if x.twice % 2 == 0 { 0.0 } else { 0.5 * ln_pi() };
    // Step down from x to the base point 1 or 1/2.
    let mut t = x.twice - 2;
    while t >= 1 {
        acc += (t as f64 / 2.0).ln();
        t -= 2;
    }
    Ok(acc)
}

/// `alpha(D, m) = (-1)^(m+1) Γ(D/2 - m) / (4^(m-1) π^(D/2-1) Γ(m))` with
/// `beta = D - 2m`.
///
/// `D = 2m` is returned as a logarithmic potential without a coefficient.
pub fn alpha_coefficient(d: u32, m: u32) -> Result<PotentialSpec> {
    if d < 2 {
        return Err(InvalidReason::DimensionTooSmall.into());
    }
    if m < 1 {
        return Err(InvalidReason::PowerTooSmall.into());
    }
    let d = i64::from(d);
    let m = i64::from(m);
    let beta = d - 2 * m;
    if beta < 0 {
        return Err(InvalidReason::ShortRange.into());
    }
    if beta == 0 {
        return Ok(PotentialSpec {
            alpha: None,
            beta,
            nature: Nature::Logarithmic,
        });
    }
    // Γ(D/2 - m) has argument beta/2 on the half-integer lattice.
    let ln_mag = log_gamma_half(HalfInteger::from_twice(beta))?
        - (m - 1) as f64 * 2.0 * LN_2
        - (d - 2) as f64 / 2.0 * ln_pi()
        - log_gamma_half(HalfInteger::from_int(m))?;
    let magnitude = SignedLogReal::from_ln(ln_mag);
    let (alpha, nature) = if m % 2 == 1 {
        (magnitude, Nature::Attractive)
    } else {
        (-magnitude, Nature::Repulsive)
    };
    Ok(PotentialSpec {
        alpha: Some(alpha),
        beta,
        nature,
    })
}

/// The `m = 1` closed form `2 Γ(D/2) / (π^(D/2-1) (D - 2))`, for `D ≥ 3`.
pub fn alpha_m1_closed_form(d: u32) -> Result<SignedLogReal> {
    if d < 3 {
        return Err(InvalidReason::ShortRange.into());
    }
    let d = i64::from(d);
    let ln_mag = LN_2 + log_gamma_half(HalfInteger::from_twice(d))?
        - (d - 2) as f64 / 2.0 * ln_pi()
        - ((d - 2) as f64).ln();
    Ok(SignedLogReal::from_ln(ln_mag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Γ on the lattice as a plain floating product, no logs until the end.
    fn gamma_product_oracle(twice: i64) -> f64 {
        let mut g = if twice % 2 == 0 { 1.0 } else { PI.sqrt() };
        let mut t = twice - 2;
        while t >= 1 {
            g *= t as f64 / 2.0;
            t -= 2;
        }
        g
    }

    #[test]
    fn gamma_examples() {
        assert_relative_eq!(
            log_gamma_half(HalfInteger::from_twice(1)).unwrap(),
            0.572_364_942_924_700_1,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            log_gamma_half(HalfInteger::from_int(3)).unwrap(),
            2f64.ln(),
            max_relative = 1e-15
        );
        // 2.5 * 1.5 * 0.5 * sqrt(pi)
        let g72 = log_gamma_half(HalfInteger::from_twice(7)).unwrap().exp();
        assert_relative_eq!(g72, 3.323_350_970_447_843, max_relative = 1e-14);
        assert_eq!(log_gamma_half(HalfInteger::from_int(1)).unwrap(), 0.0);
    }

    #[test]
    fn gamma_poles() {
        for twice in [0, -1, -2, -7] {
            assert!(matches!(
                log_gamma_half(HalfInteger::from_twice(twice)),
                Err(Error::GammaPole { .. })
            ));
        }
    }

    #[test]
    fn gamma_matches_product_oracle_up_to_50() {
        for twice in 1..=100 {
            let got = log_gamma_half(HalfInteger::from_twice(twice)).unwrap();
            let want = gamma_product_oracle(twice).ln();
            let err = (got - want).abs() / want.abs().max(1e-300);
            assert!(
                err <= 1e-13 || (got - want).abs() <= 1e-15,
                "x={}/2 got={got} want={want}",
                twice
            );
        }
    }

    #[test]
    fn gamma_large_argument() {
        // ln Γ(200) = ln(199!) = 857.9336698258574 (reference value).
        let got = log_gamma_half(HalfInteger::from_int(200)).unwrap();
        assert_relative_eq!(got, 857.933_669_825_857_4, max_relative = 1e-13);
    }

    #[test]
    fn alpha_examples() {
        let p = alpha_coefficient(3, 1).unwrap();
        assert_eq!(p.beta, 1);
        assert_eq!(p.nature, Nature::Attractive);
        assert!((p.alpha.unwrap().to_f64() - 1.0).abs() <= 1e-14);

        let p = alpha_coefficient(5, 1).unwrap();
        assert_eq!(p.beta, 3);
        assert_relative_eq!(p.alpha.unwrap().to_f64(), 1.0 / (2.0 * PI), max_relative = 1e-14);

        let p = alpha_coefficient(7, 3).unwrap();
        assert_eq!(p.beta, 1);
        assert_relative_eq!(
            p.alpha.unwrap().to_f64(),
            1.0 / (32.0 * PI * PI),
            max_relative = 1e-14
        );

        let p = alpha_coefficient(7, 2).unwrap();
        assert_eq!(p.nature, Nature::Repulsive);
        assert_eq!(p.alpha.unwrap().sign(), -1);
    }

    #[test]
    fn logarithmic_and_short_range() {
        let p = alpha_coefficient(6, 3).unwrap();
        assert_eq!(p.nature, Nature::Logarithmic);
        assert_eq!(p.beta, 0);
        assert!(p.alpha.is_none());
        assert!(matches!(
            alpha_coefficient(5, 3),
            Err(Error::Invalid(InvalidReason::ShortRange))
        ));
    }

    #[test]
    fn m1_closed_form_agrees_with_general() {
        for d in 3..=40 {
            let general = alpha_coefficient(d, 1).unwrap().alpha.unwrap();
            let closed = alpha_m1_closed_form(d).unwrap();
            assert_relative_eq!(
                (general.lnmag() - closed.lnmag()).exp(),
                1.0,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn sign_follows_parity_of_m() {
        for m in 1..=10u32 {
            for d in (2 * m + 1)..=(2 * m + 30) {
                let a = alpha_coefficient(d, m).unwrap().alpha.unwrap();
                let want = if m % 2 == 1 { 1 } else { -1 };
                assert_eq!(a.sign(), want, "D={d} m={m}");
            }
        }
    }
}
