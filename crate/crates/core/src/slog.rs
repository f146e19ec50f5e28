//! Sign + log-magnitude real numbers.
//!
//! Energies in this crate span from order one down to well below `1e-300`,
//! and intermediate factors such as `D^(2n*beta/(2n-beta))` overflow an `f64`
//! long before the final product does. [`SignedLogReal`] keeps the sign and
//! the natural log of the magnitude separately so products, quotients and
//! rational powers stay exact in log space.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A real number stored as `sign * exp(lnmag)`.
///
/// Zero is represented with `sign == 0` and `lnmag == -inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLogReal {
    sign: i8,
    lnmag: f64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl SignedLogReal {
    pub const ZERO: Self = Self {
        sign: 0,
        lnmag: f64::NEG_INFINITY,
    };
    pub const ONE: Self = Self {
        sign: 1,
        lnmag: 0.0,
    };

    /// Builds a value from its parts. `lnmag` must be finite for non-zero signs.
    pub fn from_parts(sign: i8, lnmag: f64) -> Result<Self> {
        match sign {
            0 => Ok(Self::ZERO),
            -1 | 1 if lnmag.is_finite() => Ok(Self { sign, lnmag }),
            -1 | 1 => Err(Error::Parse(format!("non-finite log magnitude {lnmag}"))),
            _ => Err(Error::Parse(format!("sign must be -1, 0 or 1, got {sign}"))),
        }
    }

    /// `exp(lnmag)` with a positive sign.
    pub fn from_ln(lnmag: f64) -> Self {
        debug_assert!(lnmag.is_finite());
        Self { sign: 1, lnmag }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 || x.is_nan() {
            return Self::ZERO;
        }
        Self {
            sign: if x > 0.0 { 1 } else { -1 },
            lnmag: x.abs().ln(),
        }
    }

    /// `-|mantissa| * 10^exp10` when `negative`, else `|mantissa| * 10^exp10`.
    pub fn from_scientific(negative: bool, mantissa: f64, exp10: i32) -> Self {
        if mantissa == 0.0 {
            return Self::ZERO;
        }
        let v = Self {
            sign: 1,
            lnmag: mantissa.abs().ln() + f64::from(exp10) * std::f64::consts::LN_10,
        };
        if negative {
            -v
        } else {
            v
        }
    }

    /// Exact ratio of two integers; `den` must be non-zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_f64(num as f64) / Self::from_f64(den as f64)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of `|self|`; `-inf` for zero.
    pub fn lnmag(&self) -> f64 {
        self.lnmag
    }

    pub fn log10mag(&self) -> f64 {
        self.lnmag / std::f64::consts::LN_10
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign < 0
    }

    pub fn abs(self) -> Self {
        Self {
            sign: self.sign.abs(),
            lnmag: self.lnmag,
        }
    }

    /// Converts to `f64`; underflows to `0.0` or overflows to `inf` outside the
    /// double range.
    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.lnmag.exp()
    }

    /// Raises to the rational power `num/den`, reducing the fraction first.
    ///
    /// Returns `None` where the real power is undefined: a negative base with
    /// an even reduced denominator, or zero to a negative power.
    pub fn pow_ratio(self, num: i64, den: i64) -> Option<Self> {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        if self.sign == 0 {
            return match num.cmp(&0) {
                Ordering::Greater => Some(Self::ZERO),
                Ordering::Equal => Some(Self::ONE),
                Ordering::Less => None,
            };
        }
        if self.sign < 0 && den % 2 == 0 {
            return None;
        }
        let sign = if self.sign < 0 && num % 2 != 0 { -1 } else { 1 };
        Some(Self {
            sign,
            lnmag: self.lnmag * num as f64 / den as f64,
        })
    }

    pub fn powi(self, p: i64) -> Self {
        self.pow_ratio(p, 1)
            .expect("integer powers are defined except zero to a negative power")
    }

    /// Real power of a non-negative value.
    pub fn powf(self, p: f64) -> Option<Self> {
        match self.sign {
            0 if p > 0.0 => Some(Self::ZERO),
            0 if p == 0.0 => Some(Self::ONE),
            1 => Some(Self {
                sign: 1,
                lnmag: self.lnmag * p,
            }),
            _ => None,
        }
    }

    pub fn sqrt(self) -> Option<Self> {
        self.powf(0.5)
    }

    /// Significand in `[1, 10)` and decimal exponent, rounded to `sig`
    /// significant digits with ties going to even.
    pub fn to_scientific(&self, sig: usize) -> Option<(f64, i32)> {
        if self.sign == 0 {
            return None;
        }
        let sig = sig.max(1);
        let l10 = self.log10mag();
        let mut exp = l10.floor();
        let mut mant = 10f64.powf(l10 - exp);
        let scale = 10f64.powi(sig as i32 - 1);
        let mut scaled = (mant * scale).round_ties_even();
        if scaled >= 10.0 * scale {
            scaled /= 10.0;
            exp += 1.0;
        } else if scaled < scale {
            scaled = scale;
        }
        mant = scaled / scale;
        Some((mant, exp as i32))
    }

    /// Decimal rendering such as `-4.41e-97`; `0` for zero.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        match self.to_scientific(sig) {
            None => "0".to_string(),
            Some((mant, exp)) => {
                let sign = if self.sign < 0 { "-" } else { "" };
                format!("{sign}{mant:.prec$}e{exp}", prec = sig.max(1) - 1)
            }
        }
    }

    /// Parses a decimal string like `-4.41e-97` or `0.5` without going
    /// through `f64` for the exponent, so magnitudes beyond the double range
    /// survive.
    pub fn parse_decimal(s: &str) -> Result<Self> {
        let t = s.trim();
        let (mant, exp) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], &t[i + 1..]),
            None => (t, "0"),
        };
        let mant: f64 = mant
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal mantissa in {s:?}")))?;
        let exp: i32 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal exponent in {s:?}")))?;
        if !mant.is_finite() {
            return Err(Error::Parse(format!("non-finite decimal {s:?}")));
        }
        Ok(Self::from_scientific(mant < 0.0, mant, exp))
    }
}

impl Default for SignedLogReal {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for SignedLogReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for SignedLogReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            sign: -self.sign,
            lnmag: self.lnmag,
        }
    }
}

impl Mul for SignedLogReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        Self {
            sign: self.sign * rhs.sign,
            lnmag: self.lnmag + rhs.lnmag,
        }
    }
}

impl Div for SignedLogReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.sign != 0, "division by zero");
        if self.sign == 0 {
            return Self::ZERO;
        }
        Self {
            sign: self.sign * rhs.sign,
            lnmag: self.lnmag - rhs.lnmag,
        }
    }
}

impl Add for SignedLogReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        // Factor out the larger magnitude: big * (1 +/- exp(small - big)).
        let (big, small) = if self.lnmag >= rhs.lnmag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let t = (small.lnmag - big.lnmag).exp();
        if big.sign == small.sign {
            Self {
                sign: big.sign,
                lnmag: big.lnmag + t.ln_1p(),
            }
        } else if t == 1.0 {
            Self::ZERO
        } else {
            Self {
                sign: big.sign,
                lnmag: big.lnmag + (-t).ln_1p(),
            }
        }
    }
}

impl Sub for SignedLogReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl PartialOrd for SignedLogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.lnmag.partial_cmp(&other.lnmag),
                _ => other.lnmag.partial_cmp(&self.lnmag),
            },
            ord => Some(ord),
        }
    }
}

impl fmt::Display for SignedLogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().map_or(6, |p| p + 1);
        f.write_str(&self.to_decimal_string(sig))
    }
}
