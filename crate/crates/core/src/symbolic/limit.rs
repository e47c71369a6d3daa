//! Limits of canonical radical forms as one symbol grows without bound.

use super::poly::SignClass;
use super::{SurdExpr, Symbol};

/// Outcome of [`limit_at_infinity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitResult {
    /// The limit exists; the carried form is free of the limit symbol.
    Finite(SurdExpr),
    DivergesPositive,
    DivergesNegative,
    /// The value grows without bound but its sign depends on the remaining
    /// symbols (the leading coefficient has mixed coefficient signs).
    IndeterminateSign,
}

/// Limit of `(P/Q)*sqrt(R)` as `t` tends to infinity, the remaining symbols
/// held fixed (and, by the global assumption, nonnegative).
///
/// The value behaves asymptotically like
/// `(lc_P / lc_Q) * sqrt(lc_R) * t^(D/2)` where
/// `D = 2*(deg_t P - deg_t Q) + deg_t R` and the `lc`s are leading
/// coefficients in `t`. Negative `D` sends the value to zero, `D = 0` leaves
/// exactly the leading-coefficient form, and positive `D` diverges with the
/// sign of `lc_P * lc_Q`.
pub fn limit_at_infinity(e: &SurdExpr, t: Symbol) -> LimitResult {
    let arity = e.arity();
    if e.is_zero() {
        return LimitResult::Finite(SurdExpr::zero(arity));
    }
    let dp = e.p().degree_in(t).expect("nonzero numerator") as i64;
    let dq = e.q().degree_in(t).expect("nonzero denominator") as i64;
    let dr = e.r().degree_in(t).expect("nonzero radicand") as i64;
    let dominance = 2 * (dp - dq) + dr;

    if dominance < 0 {
        return LimitResult::Finite(SurdExpr::zero(arity));
    }

    let lc_p = e.p().leading_coeff_in(t).expect("nonzero numerator");
    let lc_q = e.q().leading_coeff_in(t).expect("nonzero denominator");
    if dominance == 0 {
        let lc_r = e.r().leading_coeff_in(t).expect("nonzero radicand");
        return LimitResult::Finite(SurdExpr::new(lc_p, lc_q, lc_r));
    }

    match lc_p.mul(&lc_q).sign_class() {
        SignClass::Nonnegative => LimitResult::DivergesPositive,
        SignClass::Nonpositive => LimitResult::DivergesNegative,
        SignClass::Mixed => LimitResult::IndeterminateSign,
        SignClass::Zero => unreachable!("leading coefficients are nonzero"),
    }
}
