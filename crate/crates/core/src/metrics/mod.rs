//! Exact confusion-matrix metrics and their behavior as the true-negative
//! count grows without bound.
//!
//! All metrics are exact: rationals where the formula is rational (PPV, TPR,
//! F1), surds where a square root appears (FM, MCC). Zero denominators make a
//! metric undefined; undefined is a value here (`None`), never a panic and
//! never a silent zero. The open-world case, where true negatives cannot be
//! counted at all, is modeled by [`PartialCounts`]: every metric except MCC
//! is still computable, and [`mcc_limit`] gives the value MCC converges to as
//! the missing count tends to infinity.
//!
//! [`mcc_limit`] is deliberately computed from its own closed form rather
//! than by calling [`fm`], so the equality of the two (checked throughout the
//! test suite) is a genuine cross-check rather than a tautology.

mod convergence;

pub use convergence::{
    convergence_table, gap_bound, gap_within, tn_for_tolerance, ConvergenceRow, RatInterval,
};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{Rational, Surd};

/// Errors from convergence analysis; the scalar metrics never fail, they
/// return `None` when undefined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    /// A required metric is undefined at these counts (zero denominator).
    #[error("metric undefined at these counts")]
    Undefined,
    /// Tolerance must be a positive rational.
    #[error("tolerance must be positive")]
    InvalidTolerance,
}

/// A full 2x2 confusion matrix of nonnegative counts.
///
/// The `fn_` field keeps the conventional name despite the keyword clash.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub tp: BigUint,
    pub fp: BigUint,
    pub fn_: BigUint,
    pub tn: BigUint,
}

/// Confusion counts without true negatives, as produced by open-world
/// detection evaluation where the negative class is unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialCounts {
    pub tp: BigUint,
    pub fp: BigUint,
    pub fn_: BigUint,
}

impl ConfusionMatrix {
    pub fn new(tp: BigUint, fp: BigUint, fn_: BigUint, tn: BigUint) -> Self {
        Self { tp, fp, fn_, tn }
    }

    pub fn from_u64(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        Self::new(tp.into(), fp.into(), fn_.into(), tn.into())
    }

    pub fn partial(&self) -> PartialCounts {
        PartialCounts {
            tp: self.tp.clone(),
            fp: self.fp.clone(),
            fn_: self.fn_.clone(),
        }
    }
}

impl PartialCounts {
    pub fn new(tp: BigUint, fp: BigUint, fn_: BigUint) -> Self {
        Self { tp, fp, fn_ }
    }

    pub fn from_u64(tp: u64, fp: u64, fn_: u64) -> Self {
        Self::new(tp.into(), fp.into(), fn_.into())
    }

    pub fn with_tn(&self, tn: BigUint) -> ConfusionMatrix {
        ConfusionMatrix {
            tp: self.tp.clone(),
            fp: self.fp.clone(),
            fn_: self.fn_.clone(),
            tn,
        }
    }
}

fn ratio(num: &BigUint, den: &BigUint) -> Option<Rational> {
    if den.is_zero() {
        None
    } else {
        Some(Rational::new(num.clone().into(), den.clone().into()).expect("nonzero denominator"))
    }
}

/// Positive predictive value `tp/(tp+fp)`; `None` when no positive
/// predictions exist.
pub fn ppv(c: &PartialCounts) -> Option<Rational> {
    ratio(&c.tp, &(&c.tp + &c.fp))
}

/// True positive rate `tp/(tp+fn)`; `None` when no real positives exist.
pub fn tpr(c: &PartialCounts) -> Option<Rational> {
    ratio(&c.tp, &(&c.tp + &c.fn_))
}

/// F1 score `2tp/(2tp+fp+fn)`; `None` when that denominator is zero.
pub fn f1(c: &PartialCounts) -> Option<Rational> {
    let two_tp = &c.tp * 2u32;
    ratio(&two_tp, &(&two_tp + &c.fp + &c.fn_))
}

/// Fowlkes-Mallows index, the geometric mean `sqrt(ppv * tpr)`; `None` when
/// either factor is undefined.
pub fn fm(c: &PartialCounts) -> Option<Surd> {
    let product = &ppv(c)? * &tpr(c)?;
    Some(Surd::sqrt_of_rational(&product).expect("product of values in [0,1]"))
}

/// Matthews correlation coefficient
/// `(tp*tn - fp*fn)/sqrt((tp+fp)(tp+fn)(tn+fp)(tn+fn))`; `None` when any
/// marginal factor is zero.
pub fn mcc(c: &ConfusionMatrix) -> Option<Surd> {
    let factors = [&c.tp + &c.fp, &c.tp + &c.fn_, &c.tn + &c.fp, &c.tn + &c.fn_];
    if factors.iter().any(|f| f.is_zero()) {
        return None;
    }
    let numer = BigInt::from(&c.tp * &c.tn) - BigInt::from(&c.fp * &c.fn_);
    let denom = factors.into_iter().product::<BigUint>();
    Some(Surd::from_ratio(&Rational::from(numer), &denom).expect("positive radicand"))
}

/// The value MCC converges to as the true-negative count tends to infinity:
/// `tp/sqrt((tp+fp)(tp+fn))`. Computed from this closed form directly; equal
/// to [`fm`] wherever both are defined.
pub fn mcc_limit(c: &PartialCounts) -> Option<Surd> {
    let pred_pos = &c.tp + &c.fp;
    let real_pos = &c.tp + &c.fn_;
    if pred_pos.is_zero() || real_pos.is_zero() {
        return None;
    }
    let denom = pred_pos * real_pos;
    Some(Surd::from_ratio(&Rational::from(c.tp.clone()), &denom).expect("positive radicand"))
}

/// How the MCC slot of a report can come out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MccStatus {
    Defined(Surd),
    /// A marginal factor is zero, so the formula has no value.
    Undefined,
    /// True negatives were never counted, so MCC cannot be computed at all.
    NotComputable,
}

/// All five metrics for one set of counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub ppv: Option<Rational>,
    pub tpr: Option<Rational>,
    pub f1: Option<Rational>,
    pub fm: Option<Surd>,
    pub mcc: MccStatus,
}

impl MetricReport {
    pub fn from_matrix(c: &ConfusionMatrix) -> Self {
        let partial = c.partial();
        Self {
            ppv: ppv(&partial),
            tpr: tpr(&partial),
            f1: f1(&partial),
            fm: fm(&partial),
            mcc: match mcc(c) {
                Some(v) => MccStatus::Defined(v),
                None => MccStatus::Undefined,
            },
        }
    }

    pub fn from_partial(c: &PartialCounts) -> Self {
        Self {
            ppv: ppv(c),
            tpr: tpr(c),
            f1: f1(c),
            fm: fm(c),
            mcc: MccStatus::NotComputable,
        }
    }
}
