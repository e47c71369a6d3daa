//! Arbitrary-precision rationals, always reduced, denominator always positive.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::ExactError;

/// An exact rational number `p/q` in lowest terms with `q > 0`.
///
/// Thin wrapper over [`num_rational::BigRational`], which maintains the
/// canonical form on every operation. The wrapper pins down the public
/// contract: fallible construction, explicit `checked_div`, decimal parsing
/// and certified decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

/// Error from [`Rational::from_decimal_str`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    literal: String,
    reason: &'static str,
}

impl ParseRationalError {
    fn new(literal: &str, reason: &'static str) -> Self {
        Self {
            literal: literal.to_owned(),
            reason,
        }
    }
}

impl Rational {
    /// Builds `numer/denom`, rejecting a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self(BigRational::new(numer, denom)))
    }

    pub fn from_int(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// `10^-exp` for nonnegative `exp`.
    pub fn pow10_neg(exp: u32) -> Self {
        Self(BigRational::new(
            BigInt::one(),
            BigInt::from(10u32).pow(exp),
        ))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// `self / rhs`, or `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(Self(&self.0 / &rhs.0))
        }
    }

    /// Parses either a plain fraction `p/q` or a decimal literal with an
    /// optional exponent: `3`, `-0.25`, `1e-6`, `2.5E3`.
    ///
    /// Decimal literals convert exactly; `0.1` becomes `1/10`, not a float.
    pub fn from_decimal_str(s: &str) -> Result<Self, ParseRationalError> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(ParseRationalError::new(s, "empty string"));
        }
        if let Some((num, den)) = trimmed.split_once('/') {
            let numer = BigInt::from_str(num.trim())
                .map_err(|_| ParseRationalError::new(s, "invalid numerator"))?;
            let denom = BigInt::from_str(den.trim())
                .map_err(|_| ParseRationalError::new(s, "invalid denominator"))?;
            if denom.is_zero() {
                return Err(ParseRationalError::new(s, "zero denominator"));
            }
            return Ok(Self(BigRational::new(numer, denom)));
        }

        let (mantissa, exponent) = match trimmed.split_once(['e', 'E']) {
            Some((m, e)) => {
                let exp =
                    i32::from_str(e).map_err(|_| ParseRationalError::new(s, "invalid exponent"))?;
                (m, exp)
            }
            None => (trimmed, 0),
        };

        let (sign, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ParseRationalError::new(s, "no digits"));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(ParseRationalError::new(s, "invalid digit"));
        }

        let mut numer = BigInt::zero();
        for b in int_part.bytes().chain(frac_part.bytes()) {
            numer = numer * 10 + BigInt::from(b - b'0');
        }
        numer *= sign;
        let scale = frac_part.len() as i64 - exponent as i64;
        let value = if scale >= 0 {
            BigRational::new(numer, BigInt::from(10u32).pow(scale as u32))
        } else {
            BigRational::from_integer(numer * BigInt::from(10u32).pow(-scale as u32))
        };
        Ok(Self(value))
    }

    /// Decimal rendering truncated toward zero with exactly `digits`
    /// fractional digits. The printed value `v` satisfies
    /// `|self - v| < 10^-digits` and `|v| <= |self|`.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigUint::from(10u32).pow(digits);
        let n = self.0.numer().magnitude();
        let d = self.0.denom().magnitude();
        let t = n * &scale / d;
        let int_part = &t / &scale;
        let frac_part = &t % &scale;
        let sign = if self.is_negative() && !t.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = digits as usize
            )
        }
    }
}

impl fmt::Display for Rational {
    /// `p/q` in lowest terms; plain `p` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Self(BigRational::from_integer(value))
    }
}

impl From<BigUint> for Rational {
    fn from(value: BigUint) -> Self {
        Self(BigRational::from_integer(value.into()))
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Self::from_int(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}
