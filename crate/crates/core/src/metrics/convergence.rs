//! Certified analysis of the gap between MCC at finite true-negative counts
//! and its limit value.

use num_bigint::BigUint;
use num_traits::One;

use crate::batch;
use crate::exact::{integer_sqrt_floor, Rational, Surd};

use super::{fm, mcc, MetricsError, PartialCounts};

/// A closed rational interval known to contain some exact real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    fn point(v: Rational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }

    fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            Self::new(-&self.hi, -&self.lo)
        } else {
            let mag = std::cmp::max(self.lo.abs(), self.hi.abs());
            Self::new(Rational::zero(), mag)
        }
    }
}

/// Rational enclosure of a surd with width at most `10^-guard_digits`,
/// via a directed-rounded integer square root.
///
/// For `(p/q)*sqrt(r)` the magnitude is `sqrt(p^2 r)/q`; with
/// `w = integer_sqrt_floor(p^2 r S^2)` and `S = 10^guard_digits`, the scaled
/// root satisfies `w <= S*sqrt(p^2 r) < w+1`, giving the enclosure
/// `[w/(Sq), (w+1)/(Sq)]` before the sign is applied. Rational-valued surds
/// (radicand 1, which normalization guarantees for every perfect square)
/// yield a zero-width interval.
fn surd_enclosure(s: &Surd, guard_digits: u32) -> RatInterval {
    if let Some(exact) = s.as_rational() {
        return RatInterval::point(exact.clone());
    }
    let p = s.coeff().numer().magnitude();
    let q = s.coeff().denom().magnitude();
    let scale = BigUint::from(10u32).pow(guard_digits);
    let w = integer_sqrt_floor(&(p * p * s.radicand() * &scale * &scale));
    let denom = &scale * q;
    let lo_abs = Rational::new((w.clone()).into(), denom.clone().into()).expect("nonzero");
    let hi_abs = Rational::new((w + 1u32).into(), denom.into()).expect("nonzero");
    if s.signum() < 0 {
        RatInterval::new(-&hi_abs, -&lo_abs)
    } else {
        RatInterval::new(lo_abs, hi_abs)
    }
}

/// Certified enclosure of `|MCC(tp,fp,fn,tn) - FM(tp,fp,fn)|` with width
/// below `10^-digits` (each operand is enclosed to `digits + 10` guard
/// digits, so the difference is an order of magnitude tighter than asked).
///
/// Errors when MCC at these counts or FM is undefined.
pub fn gap_bound(
    c: &PartialCounts,
    tn: &BigUint,
    digits: u32,
) -> Result<RatInterval, MetricsError> {
    let m = mcc(&c.with_tn(tn.clone())).ok_or(MetricsError::Undefined)?;
    let f = fm(c).ok_or(MetricsError::Undefined)?;
    let guard = digits + 10;
    Ok(surd_enclosure(&m, guard)
        .sub(&surd_enclosure(&f, guard))
        .abs())
}

/// Exact test of `|MCC - FM| <= eps` at the given true-negative count;
/// `None` when MCC or FM is undefined there.
///
/// Unlike [`gap_bound`], this decides the comparison exactly (by
/// cross-squaring), so a gap equal to `eps` on the nose counts as within
/// tolerance.
pub fn gap_within(c: &PartialCounts, tn: &BigUint, eps: &Rational) -> Option<bool> {
    let m = mcc(&c.with_tn(tn.clone()))?;
    let f = fm(c)?;
    Some(Surd::abs_diff_le(&m, &f, eps))
}

/// Smallest true-negative count found by doubling-then-bisection at which
/// the exact gap is within `eps` both there and at twice that count.
///
/// The search starts at `tn = 1` and uses the exact predicate, so boundary
/// cases (gap exactly `eps`) are accepted. Checking the doubled point guards
/// against accepting a point that only dips under the tolerance
/// transiently; convergence of MCC to FM guarantees termination.
pub fn tn_for_tolerance(c: &PartialCounts, eps: &Rational) -> Result<BigUint, MetricsError> {
    if fm(c).is_none() {
        return Err(MetricsError::Undefined);
    }
    if !eps.is_positive() {
        return Err(MetricsError::InvalidTolerance);
    }
    let ok = |tn: &BigUint| {
        gap_within(c, tn, eps) == Some(true) && gap_within(c, &(tn * 2u32), eps) == Some(true)
    };

    let mut hi = BigUint::one();
    while !ok(&hi) {
        hi *= 2u32;
    }
    if hi.is_one() {
        return Ok(hi);
    }
    let mut lo = &hi / 2u32; // ok(lo) is false: the doubling loop passed it
    while &lo + 1u32 < hi {
        let mid = (&lo + &hi) / 2u32;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub tn: BigUint,
    /// `None` when MCC is undefined at this true-negative count.
    pub mcc: Option<Surd>,
    /// Certified enclosure of `|MCC - FM|`; `None` exactly when `mcc` is.
    pub gap: Option<RatInterval>,
}

/// Evaluates MCC and the certified gap at each requested true-negative
/// count. Rows come back in input order; they are computed in parallel when
/// the `parallel` feature is on.
///
/// Errors when FM is undefined (there is no limit to converge to).
pub fn convergence_table(
    c: &PartialCounts,
    tn_values: &[BigUint],
    digits: u32,
) -> Result<Vec<ConvergenceRow>, MetricsError> {
    if fm(c).is_none() {
        return Err(MetricsError::Undefined);
    }
    Ok(batch::map(tn_values, |tn| {
        let mcc_value = mcc(&c.with_tn(tn.clone()));
        let gap = mcc_value
            .as_ref()
            .map(|_| gap_bound(c, tn, digits).expect("both metrics defined"));
        ConvergenceRow {
            tn: tn.clone(),
            mcc: mcc_value,
            gap,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    fn counts(tp: u64, fp: u64, fn_: u64) -> PartialCounts {
        PartialCounts::from_u64(tp, fp, fn_)
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn closed_form_gaps_for_unit_counts() {
        // For tp=fp=fn=1: MCC = (tn-1)/(2(tn+1)), FM = 1/2, so the gap is
        // exactly 1/(tn+1).
        let c = counts(1, 1, 1);
        for (tn, gap) in [(9u64, rat(1, 10)), (99, rat(1, 100)), (999, rat(1, 1000))] {
            let interval = gap_bound(&c, &big(tn), 6).unwrap();
            assert!(interval.contains(&gap), "tn={tn}");
            assert!(interval.width() < Rational::pow10_neg(6));
        }
    }

    #[test]
    fn zero_gap_for_perfect_counts() {
        let c = counts(5, 0, 0);
        for tn in [1u64, 7, 1000] {
            let interval = gap_bound(&c, &big(tn), 6).unwrap();
            assert!(interval.contains(&Rational::zero()));
            assert!(interval.hi().is_zero());
        }
    }

    #[test]
    fn gap_shrinks_below_tolerance_at_huge_tn() {
        let c = counts(6, 2, 3);
        let tn = BigUint::from(10u32).pow(12);
        let interval = gap_bound(&c, &tn, 6).unwrap();
        assert!(interval.hi() < &Rational::pow10_neg(6));
        assert!(interval.lo() > &Rational::zero());
    }

    #[test]
    fn gap_bound_requires_defined_metrics() {
        // fp=fn=0 and tn=0 kills two marginal factors.
        assert_eq!(
            gap_bound(&counts(5, 0, 0), &big(0), 6),
            Err(MetricsError::Undefined)
        );
        assert_eq!(
            gap_bound(&counts(0, 0, 3), &big(5), 6),
            Err(MetricsError::Undefined)
        );
    }

    #[test]
    fn tolerance_search_examples() {
        assert_eq!(
            tn_for_tolerance(&counts(1, 1, 1), &rat(1, 1000)),
            Ok(big(999))
        );
        assert_eq!(tn_for_tolerance(&counts(5, 0, 0), &rat(1, 10)), Ok(big(1)));
        // Gap at tn=1 is exactly 1/2; the boundary must count.
        assert_eq!(tn_for_tolerance(&counts(1, 1, 1), &rat(1, 2)), Ok(big(1)));
        assert_eq!(tn_for_tolerance(&counts(1, 1, 1), &rat(1, 10)), Ok(big(9)));
    }

    #[test]
    fn tolerance_search_rejects_bad_inputs() {
        assert_eq!(
            tn_for_tolerance(&counts(0, 0, 3), &rat(1, 10)),
            Err(MetricsError::Undefined)
        );
        assert_eq!(
            tn_for_tolerance(&counts(1, 1, 1), &rat(0, 1)),
            Err(MetricsError::InvalidTolerance)
        );
        assert_eq!(
            tn_for_tolerance(&counts(1, 1, 1), &rat(-1, 10)),
            Err(MetricsError::InvalidTolerance)
        );
    }

    #[test]
    fn table_preserves_order_and_marks_undefined_rows() {
        // tn=0 with fp=0 zeroes the (tn+fp) factor: MCC undefined there.
        let c = counts(1, 0, 1);
        let tns = [big(9), big(0), big(99)];
        let rows = convergence_table(&c, &tns, 6).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].tn, big(9));
        assert!(rows[0].mcc.is_some() && rows[0].gap.is_some());
        assert_eq!(rows[1].tn, big(0));
        assert!(rows[1].mcc.is_none() && rows[1].gap.is_none());
        assert_eq!(rows[2].tn, big(99));
        assert!(rows[2].mcc.is_some());
    }

    #[test]
    fn table_edge_cases() {
        assert_eq!(convergence_table(&counts(1, 1, 1), &[], 6), Ok(vec![]));
        assert_eq!(
            convergence_table(&counts(0, 0, 3), &[big(1)], 6),
            Err(MetricsError::Undefined)
        );
    }

    proptest! {
        #[test]
        fn enclosure_contains_its_surd(n in -500i64..500, d in 1i64..500, r in 1u64..2000, guard in 1u32..12) {
            let s = Surd::new(rat(n, d), BigUint::from(r));
            let interval = surd_enclosure(&s, guard);
            prop_assert!(Surd::from_rational(interval.lo().clone()) <= s);
            prop_assert!(s <= Surd::from_rational(interval.hi().clone()));
            prop_assert!(interval.width() <= Rational::pow10_neg(guard));
        }

        #[test]
        fn gap_interval_contains_exact_gap(tp in 1u64..40, fp in 0u64..40, fn_ in 0u64..40, tn in 1u64..1000) {
            let c = counts(tp, fp, fn_);
            let tn = big(tn);
            if let (Some(m), Some(f)) = (mcc(&c.with_tn(tn.clone())), fm(&c)) {
                let interval = gap_bound(&c, &tn, 8).unwrap();
                // |m - f| <= hi and |m - f| >= lo, decided exactly.
                prop_assert!(Surd::abs_diff_le(&m, &f, interval.hi()));
                prop_assert!(!Surd::abs_diff_lt(&m, &f, interval.lo()));
            }
        }

        #[test]
        fn tolerance_search_result_is_within_and_doubled(tp in 1u64..20, fp in 0u64..20, fn_ in 0u64..20) {
            let c = counts(tp, fp, fn_);
            let eps = rat(1, 50);
            let tn0 = tn_for_tolerance(&c, &eps).unwrap();
            prop_assert_eq!(gap_within(&c, &tn0, &eps), Some(true));
            prop_assert_eq!(gap_within(&c, &(&tn0 * 2u32), &eps), Some(true));
        }
    }
}
