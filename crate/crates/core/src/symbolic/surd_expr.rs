//! Canonical radical forms `(P/Q)*sqrt(R)` over polynomials, and the exact
//! identity test between two such forms.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::exact::{Rational, Surd};

use super::poly::SignClass;
use super::{Context, Expr, Polynomial, SymbolicError};

/// The value `(P/Q) * sqrt(R)` with polynomial `P`, `Q`, `R`.
///
/// Invariants: `Q` and `R` are nonzero polynomials; when the value is zero,
/// the form is exactly `(0/1)*sqrt(1)`; when `R` is a perfect polynomial
/// square with sign-determinate root, the root is folded into `P` so that
/// radical-free values carry `R = 1`. No gcd cancellation between `P` and
/// `Q` is performed: equality is decided by cross-multiplication, which does
/// not need reduced forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdExpr {
    p: Polynomial,
    q: Polynomial,
    r: Polynomial,
}

/// Outcome of [`is_identically_equal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual,
    Indeterminate,
}

impl SurdExpr {
    /// Builds the form, normalizing zero and folding perfect-square
    /// radicands into the numerator.
    pub fn new(p: Polynomial, q: Polynomial, r: Polynomial) -> Self {
        let arity = p.arity();
        assert!(!q.is_zero(), "zero denominator polynomial");
        assert!(!r.is_zero(), "zero radicand polynomial");
        if p.is_zero() {
            return Self::zero(arity);
        }
        if !r.is_one() {
            if let Some(root) = r.sqrt() {
                match root.sign_class() {
                    SignClass::Nonnegative => {
                        return Self {
                            p: p.mul(&root),
                            q,
                            r: Polynomial::one(arity),
                        };
                    }
                    SignClass::Nonpositive => {
                        return Self {
                            p: p.mul(&root.neg()),
                            q,
                            r: Polynomial::one(arity),
                        };
                    }
                    // A sign-mixed root cannot be folded: sqrt(root^2) is
                    // |root|, which is not a polynomial.
                    SignClass::Zero | SignClass::Mixed => {}
                }
            }
        }
        Self { p, q, r }
    }

    pub fn zero(arity: usize) -> Self {
        Self {
            p: Polynomial::zero(arity),
            q: Polynomial::one(arity),
            r: Polynomial::one(arity),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self {
            p: Polynomial::one(arity),
            q: Polynomial::one(arity),
            r: Polynomial::one(arity),
        }
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn r(&self) -> &Polynomial {
        &self.r
    }

    pub fn arity(&self) -> usize {
        self.p.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// Exact value at a nonnegative-integer assignment (one value per
    /// context symbol, in context order).
    ///
    /// The assignment must keep `Q` and `R` nonzero; a zero denominator or a
    /// zero or negative radicand is reported as a singularity.
    pub fn evaluate_at(&self, values: &[BigUint]) -> Result<Surd, SymbolicError> {
        let ints: Vec<num_bigint::BigInt> = values.iter().map(|v| v.clone().into()).collect();
        let qv = self.q.eval(&ints);
        if qv.is_zero() {
            return Err(SymbolicError::Singularity);
        }
        let rv = self.r.eval(&ints);
        if rv.is_zero() || rv < num_bigint::BigInt::zero() {
            return Err(SymbolicError::Singularity);
        }
        let pv = self.p.eval(&ints);
        let coeff = Rational::new(pv, qv).expect("nonzero denominator");
        Ok(Surd::new(coeff, rv.magnitude().clone()))
    }

    /// Render with symbol names from `ctx`.
    ///
    /// For display only, the shared integer content of `P` and `Q` is
    /// cancelled; the stored form is unchanged.
    pub fn display<'a>(&'a self, ctx: &'a Context) -> SurdExprDisplay<'a> {
        SurdExprDisplay { value: self, ctx }
    }
}

pub struct SurdExprDisplay<'a> {
    value: &'a SurdExpr,
    ctx: &'a Context,
}

impl fmt::Display for SurdExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value;
        if v.is_zero() {
            return write!(f, "0");
        }
        let content_gcd = {
            use num_integer::Integer;
            v.p.content().gcd(&v.q.content())
        };
        let (p, q) = if content_gcd > BigUint::one() {
            (v.p.div_content(&content_gcd), v.q.div_content(&content_gcd))
        } else {
            (v.p.clone(), v.q.clone())
        };
        let radical_free = v.r.is_one();
        match (radical_free, q.is_one()) {
            (true, true) => write!(f, "{}", p.display(self.ctx)),
            (true, false) => write!(f, "({})/({})", p.display(self.ctx), q.display(self.ctx)),
            (false, true) => write!(
                f,
                "({})*sqrt({})",
                p.display(self.ctx),
                v.r.display(self.ctx)
            ),
            (false, false) => write!(
                f,
                "(({})/({}))*sqrt({})",
                p.display(self.ctx),
                q.display(self.ctx),
                v.r.display(self.ctx)
            ),
        }
    }
}

/// Rewrites an expression into canonical `(P/Q)*sqrt(R)` form over `ctx`.
///
/// Radicals combine multiplicatively (`sqrt(a)*sqrt(b) = sqrt(ab)`, sound
/// because symbols are nonnegative) and additively only when the radicands
/// are identical polynomials. `sqrt` of a form that still carries a radical
/// is a nested radical and is rejected; division by the zero polynomial is
/// rejected syntactically.
pub fn canonicalize(ctx: &Context, expr: &Expr) -> Result<SurdExpr, SymbolicError> {
    let arity = ctx.len();
    match expr {
        Expr::Symbol(name) => {
            let sym = ctx
                .symbol(name)
                .ok_or_else(|| SymbolicError::UnknownSymbol(name.clone()))?;
            Ok(SurdExpr::new(
                Polynomial::symbol(ctx, sym),
                Polynomial::one(arity),
                Polynomial::one(arity),
            ))
        }
        Expr::Integer(v) => Ok(SurdExpr::new(
            Polynomial::constant(arity, v.clone().into()),
            Polynomial::one(arity),
            Polynomial::one(arity),
        )),
        Expr::Neg(inner) => {
            let x = canonicalize(ctx, inner)?;
            if x.is_zero() {
                return Ok(x);
            }
            Ok(SurdExpr::new(x.p.neg(), x.q, x.r))
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let xa = canonicalize(ctx, a)?;
            let xb = canonicalize(ctx, b)?;
            let pb = if matches!(expr, Expr::Sub(_, _)) {
                xb.p.neg()
            } else {
                xb.p.clone()
            };
            if xa.is_zero() {
                return Ok(SurdExpr::new(pb, xb.q, xb.r));
            }
            if xb.is_zero() {
                return Ok(xa);
            }
            if xa.r != xb.r {
                return Err(SymbolicError::RadicalSum);
            }
            Ok(SurdExpr::new(
                xa.p.mul(&xb.q).add(&pb.mul(&xa.q)),
                xa.q.mul(&xb.q),
                xa.r,
            ))
        }
        Expr::Mul(a, b) => {
            let xa = canonicalize(ctx, a)?;
            let xb = canonicalize(ctx, b)?;
            if xa.is_zero() || xb.is_zero() {
                return Ok(SurdExpr::zero(arity));
            }
            Ok(SurdExpr::new(
                xa.p.mul(&xb.p),
                xa.q.mul(&xb.q),
                xa.r.mul(&xb.r),
            ))
        }
        Expr::Div(a, b) => {
            let xa = canonicalize(ctx, a)?;
            let xb = canonicalize(ctx, b)?;
            if xb.is_zero() {
                return Err(SymbolicError::ZeroDenominator);
            }
            if xa.is_zero() {
                return Ok(SurdExpr::zero(arity));
            }
            // (Pa/Qa)sqrt(Ra) * Qb/(Pb sqrt(Rb))
            //   = (Pa Qb / (Qa Pb Rb)) * sqrt(Ra Rb)
            Ok(SurdExpr::new(
                xa.p.mul(&xb.q),
                xa.q.mul(&xb.p).mul(&xb.r),
                xa.r.mul(&xb.r),
            ))
        }
        Expr::Sqrt(inner) => {
            let x = canonicalize(ctx, inner)?;
            if !x.r.is_one() {
                return Err(SymbolicError::NestedRadical);
            }
            if x.is_zero() {
                return Ok(SurdExpr::zero(arity));
            }
            // sqrt(P'/Q') = (1/Q') * sqrt(P' Q')
            Ok(SurdExpr::new(
                Polynomial::one(arity),
                x.q.clone(),
                x.p.mul(&x.q),
            ))
        }
    }
}

/// Decides whether two canonical forms denote the same real-valued function
/// of the (nonnegative) symbols.
///
/// Stage one cross-squares: `a = b` requires
/// `Pa^2 Ra Qb^2 = Pb^2 Rb Qa^2` as polynomials; inequality there proves the
/// magnitudes differ somewhere, hence `NotEqual`. With equal squares only
/// the signs can disagree, and the coefficient sign classes of `Pa Qa` and
/// `Pb Qb` settle it when both are determinate.
///
/// When a sign class is mixed (as happens for every rewrite of the Matthews
/// coefficient, whose numerator `tp*tn - fp*fn` has both signs), a second
/// stage removes the radicals instead: if `Ra Rb` has a polynomial square
/// root `S` of determinate sign, then multiplying both sides of `a = b` by
/// `Qa Qb sqrt(Ra)` turns the claim into the polynomial identity
/// `Pa Qb Ra = ± Pb Qa S`, which is decidable. Squared equality has already
/// pinned the magnitudes, so the identity holding proves `Equal` and its
/// failing proves `NotEqual`. Only when `Ra Rb` is not a polynomial square
/// (or its root has mixed signs) does the test return `Indeterminate`.
pub fn is_identically_equal(a: &SurdExpr, b: &SurdExpr) -> Verdict {
    assert_eq!(a.arity(), b.arity(), "mixed symbol contexts");

    let qb2 = b.q.mul(&b.q);
    let qa2 = a.q.mul(&a.q);
    let lhs = a.p.mul(&a.p).mul(&a.r).mul(&qb2);
    let rhs = b.p.mul(&b.p).mul(&b.r).mul(&qa2);
    if lhs != rhs {
        return Verdict::NotEqual;
    }

    let sign_a = a.p.mul(&a.q).sign_class();
    let sign_b = b.p.mul(&b.q).sign_class();
    match (sign_a, sign_b) {
        (SignClass::Zero, SignClass::Zero) => return Verdict::Equal,
        (SignClass::Nonnegative, SignClass::Nonnegative)
        | (SignClass::Nonpositive, SignClass::Nonpositive) => return Verdict::Equal,
        (SignClass::Nonnegative, SignClass::Nonpositive)
        | (SignClass::Nonpositive, SignClass::Nonnegative) => return Verdict::NotEqual,
        // Zero pairs only with zero: squared equality forces the other
        // numerator to vanish with it.
        (SignClass::Zero, _) | (_, SignClass::Zero) => unreachable!("unequal squares"),
        _ => {}
    }

    let Some(s) = a.r.mul(&b.r).sqrt() else {
        return Verdict::Indeterminate;
    };
    let s = match s.sign_class() {
        SignClass::Nonnegative => s,
        SignClass::Nonpositive => s.neg(),
        SignClass::Zero | SignClass::Mixed => return Verdict::Indeterminate,
    };
    let lhs = a.p.mul(&b.q).mul(&a.r);
    let rhs = b.p.mul(&a.q).mul(&s);
    if lhs == rhs {
        Verdict::Equal
    } else {
        Verdict::NotEqual
    }
}
