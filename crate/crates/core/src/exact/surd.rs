//! Exact values of the form `coeff * sqrt(radicand)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::isqrt::{integer_sqrt_floor, perfect_sqrt};
use super::{ExactError, Rational};

/// Trial division pulls square factors out of radicands with primes up to
/// this bound. Larger square factors stay inside the radical; comparisons
/// never rely on the radicand being squarefree.
const SMALL_PRIME_BOUND: u64 = 1000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SMALL_PRIME_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for p in 2..=n {
            if !composite[p] {
                primes.push(p as u64);
                for m in (p * p..=n).step_by(p) {
                    composite[m] = true;
                }
            }
        }
        primes
    })
}

/// An exact real `coeff * sqrt(radicand)` with rational `coeff` and a
/// nonnegative integer `radicand`.
///
/// Canonical form: `radicand >= 1`, with `radicand == 1` exactly when the
/// value is rational (and `coeff == 0` when the value is zero); square
/// factors with primes below [`SMALL_PRIME_BOUND`] are extracted into the
/// coefficient. Equality and ordering compare the represented real values by
/// sign analysis plus cross-squaring, so they are exact even when two
/// radicands share a large square factor the normalization cannot see.
#[derive(Debug, Clone)]
pub struct Surd {
    coeff: Rational,
    radicand: BigUint,
}

impl Surd {
    /// Canonicalizes `coeff * sqrt(radicand)`.
    pub fn new(coeff: Rational, radicand: BigUint) -> Self {
        if coeff.is_zero() || radicand.is_zero() {
            return Self {
                coeff: Rational::zero(),
                radicand: BigUint::one(),
            };
        }
        if let Some(root) = perfect_sqrt(&radicand) {
            return Self {
                coeff: &coeff * &Rational::from(root),
                radicand: BigUint::one(),
            };
        }
        let mut rad = radicand;
        let mut extracted = BigUint::one();
        for &p in small_primes() {
            let p2 = BigUint::from(p * p);
            if rad < p2 {
                break;
            }
            while (&rad % &p2).is_zero() {
                rad /= &p2;
                extracted *= p;
            }
        }
        Self {
            coeff: &coeff * &Rational::from(extracted),
            radicand: rad,
        }
    }

    pub fn from_rational(value: Rational) -> Self {
        Self {
            coeff: value,
            radicand: BigUint::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    /// `n / sqrt(d)`, rationalized to `(n/d) * sqrt(d)` and canonicalized.
    pub fn from_ratio(n: &Rational, d: &BigUint) -> Result<Self, ExactError> {
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let coeff = n
            .checked_div(&Rational::from(d.clone()))
            .expect("nonzero denominator");
        Ok(Self::new(coeff, d.clone()))
    }

    /// `sqrt(value)` for a nonnegative rational: `sqrt(p/q) = (1/q) * sqrt(p*q)`.
    pub fn sqrt_of_rational(value: &Rational) -> Result<Self, ExactError> {
        if value.is_negative() {
            return Err(ExactError::NegativeRadicand);
        }
        let p = value.numer().magnitude().clone();
        let q = value.denom().magnitude().clone();
        let coeff =
            Rational::new(BigInt::one(), BigInt::from(q.clone())).expect("positive denominator");
        Ok(Self::new(coeff, p * q))
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The exact rational value, when the radical part is trivial.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.radicand.is_one() {
            Some(&self.coeff)
        } else {
            None
        }
    }

    pub fn signum(&self) -> i8 {
        self.coeff.signum()
    }

    pub fn neg(&self) -> Self {
        Self {
            coeff: -&self.coeff,
            radicand: self.radicand.clone(),
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            coeff: self.coeff.abs(),
            radicand: self.radicand.clone(),
        }
    }

    /// Exact square, always rational: `coeff^2 * radicand`.
    pub fn square(&self) -> Rational {
        &(&self.coeff * &self.coeff) * &Rational::from(self.radicand.clone())
    }

    pub fn mul_rational(&self, rhs: &Rational) -> Self {
        if rhs.is_zero() {
            return Self::zero();
        }
        Self {
            coeff: &self.coeff * rhs,
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.coeff * &rhs.coeff, &self.radicand * &rhs.radicand)
    }

    /// Exact test `|a - b| <= eps`.
    ///
    /// The difference of two surds is generally not a surd, so the test is
    /// rearranged: `(a-b)^2 <= eps^2` iff `a^2 + b^2 - eps^2 <= 2ab`, where
    /// the left side is rational and the right side is a single surd. Both
    /// sides then compare exactly. Holding at the boundary matters: a gap of
    /// exactly `1/1000` must count as within tolerance `1/1000`.
    pub fn abs_diff_le(a: &Self, b: &Self, eps: &Rational) -> bool {
        if eps.is_negative() {
            return false;
        }
        Self::abs_diff_cmp(a, b, eps) != Ordering::Greater
    }

    /// Exact test `|a - b| < eps`.
    pub fn abs_diff_lt(a: &Self, b: &Self, eps: &Rational) -> bool {
        if eps.is_negative() {
            return false;
        }
        Self::abs_diff_cmp(a, b, eps) == Ordering::Less
    }

    fn abs_diff_cmp(a: &Self, b: &Self, eps: &Rational) -> Ordering {
        let lhs = &(&a.square() + &b.square()) - &(eps * eps);
        let rhs = a.mul(b).mul_rational(&Rational::from_int(2));
        Self::from_rational(lhs).cmp(&rhs)
    }

    /// Decimal rendering truncated toward zero with exactly `digits`
    /// fractional digits; absolute error below `10^-digits`.
    ///
    /// For `(p/q) * sqrt(r)` the scaled magnitude is
    /// `floor(|value| * 10^digits) = isqrt(p^2 * r * 10^(2 digits)) / q`,
    /// exact because `floor(floor(x)/q) = floor(x/q)` for integer `q > 0`.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigUint::from(10u32).pow(digits);
        let p = self.coeff.numer().magnitude();
        let q = self.coeff.denom().magnitude();
        let scaled = p * p * &self.radicand * &scale * &scale;
        let t = integer_sqrt_floor(&scaled) / q;
        let int_part = &t / &scale;
        let frac_part = &t % &scale;
        let sign = if self.coeff.is_negative() && !t.is_zero() {
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

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    /// Exact ordering of the represented reals: signs first, then
    /// cross-squared magnitudes.
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        match sa {
            0 => Ordering::Equal,
            1 => self.square().cmp(&other.square()),
            _ => other.square().cmp(&self.square()),
        }
    }
}

impl From<Rational> for Surd {
    fn from(value: Rational) -> Self {
        Self::from_rational(value)
    }
}

impl fmt::Display for Surd {
    /// `(p/q)*sqrt(r)` for irrational values; rational values print as the
    /// plain rational (`1/2`, `1`, `0`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(
                f,
                "({}/{})*sqrt({})",
                self.coeff.numer(),
                self.coeff.denom(),
                self.radicand
            )
        }
    }
}
