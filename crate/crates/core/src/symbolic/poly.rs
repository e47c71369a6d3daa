//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors (one entry per
//! context symbol), so iteration order is the lexicographic monomial order
//! and every operation is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::integer_sqrt_floor;

use super::{Context, Symbol, SymbolicError};

/// Coefficient sign summary under the all-symbols-nonnegative assumption.
///
/// `Nonnegative` / `Nonpositive` certify the polynomial's value never leaves
/// that half-line; `Mixed` means the coefficients alone cannot decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    Zero,
    Nonnegative,
    Nonpositive,
    Mixed,
}

/// A sparse polynomial over the symbols of one [`Context`].
///
/// Invariant: no stored coefficient is zero; the zero polynomial stores no
/// terms. Every exponent vector has one entry per context symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigInt::one())
    }

    pub fn constant(arity: usize, value: BigInt) -> Self {
        let mut p = Self::zero(arity);
        if !value.is_zero() {
            p.terms.insert(vec![0; arity], value);
        }
        p
    }

    pub fn symbol(ctx: &Context, sym: Symbol) -> Self {
        let mut exps = vec![0; ctx.len()];
        exps[sym.0] = 1;
        let mut p = Self::zero(ctx.len());
        p.terms.insert(exps, BigInt::one());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value when the polynomial has no symbol dependence.
    pub fn as_constant(&self) -> Option<&BigInt> {
        match self.terms.len() {
            0 => None, // zero polynomial: handled by callers via is_zero
            1 => {
                let (exps, coeff) = self.terms.iter().next().expect("one term");
                if exps.iter().all(|&e| e == 0) {
                    Some(coeff)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity, "mixed symbol contexts");
        let mut out = self.clone();
        for (exps, coeff) in &rhs.terms {
            out.add_term(exps.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity, "mixed symbol contexts");
        let mut out = self.clone();
        for (exps, coeff) in &rhs.terms {
            out.add_term(exps.clone(), -coeff);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        Self {
            arity: self.arity,
            terms,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity, "mixed symbol contexts");
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one(self.arity);
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Highest exponent of `sym` across terms; errors on the zero polynomial,
    /// whose degree is undefined.
    pub fn degree_in(&self, sym: Symbol) -> Result<u32, SymbolicError> {
        if self.is_zero() {
            return Err(SymbolicError::ZeroPolynomialDegree);
        }
        Ok(self
            .terms
            .keys()
            .map(|e| e[sym.0])
            .max()
            .expect("nonzero polynomial has terms"))
    }

    /// Coefficient polynomial (in the remaining symbols) of
    /// `sym^degree_in(sym)`.
    pub fn leading_coeff_in(&self, sym: Symbol) -> Result<Self, SymbolicError> {
        let deg = self.degree_in(sym)?;
        let mut out = Self::zero(self.arity);
        for (exps, coeff) in &self.terms {
            if exps[sym.0] == deg {
                let mut e = exps.clone();
                e[sym.0] = 0;
                out.add_term(e, coeff.clone());
            }
        }
        Ok(out)
    }

    /// Exact evaluation at integer points.
    pub fn eval(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.arity, "assignment arity mismatch");
        let mut total = BigInt::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (value, &e) in values.iter().zip(exps) {
                if e > 0 {
                    term *= value.pow(e);
                }
            }
            total += term;
        }
        total
    }

    pub fn sign_class(&self) -> SignClass {
        let mut pos = false;
        let mut neg = false;
        for coeff in self.terms.values() {
            match coeff.sign() {
                Sign::Plus => pos = true,
                Sign::Minus => neg = true,
                Sign::NoSign => unreachable!("zero coefficients are never stored"),
            }
        }
        match (pos, neg) {
            (false, false) => SignClass::Zero,
            (true, false) => SignClass::Nonnegative,
            (false, true) => SignClass::Nonpositive,
            (true, true) => SignClass::Mixed,
        }
    }

    /// Gcd of coefficient magnitudes; zero for the zero polynomial.
    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for coeff in self.terms.values() {
            g = g.gcd(coeff.magnitude());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d`, which must divide the content.
    pub fn div_content(&self, d: &BigUint) -> Self {
        let d = BigInt::from(d.clone());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c / &d))
            .collect();
        Self {
            arity: self.arity,
            terms,
        }
    }

    /// Exact polynomial square root, or `None` when `self` is not a perfect
    /// square in the polynomial ring.
    ///
    /// Builds the root term by term from the lexicographic leading monomial:
    /// each step divides the leading term of the residual `self - root^2` by
    /// twice the root's leading term. Any inexact division proves `self` is
    /// not a square. The returned root always has a positive leading
    /// coefficient (`-root` is the other square root).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero(self.arity));
        }
        let (lead_exps, lead_coeff) = self.terms.last_key_value().expect("nonzero");
        if lead_coeff.is_negative() || lead_exps.iter().any(|e| e % 2 != 0) {
            return None;
        }
        let lc_root = integer_sqrt_floor(lead_coeff.magnitude());
        if &(&lc_root * &lc_root) != lead_coeff.magnitude() {
            return None;
        }
        let root_exps: Vec<u32> = lead_exps.iter().map(|e| e / 2).collect();
        let twice_lead = BigInt::from(lc_root.clone()) * 2;

        let mut root = Self::zero(self.arity);
        root.add_term(root_exps.clone(), BigInt::from(lc_root));

        // Each iteration appends one strictly smaller monomial to the root;
        // the cap only guards against a logic error looping forever.
        let cap = 16 * (self.terms.len() + 4);
        for _ in 0..cap {
            let residual = self.sub(&root.mul(&root));
            let Some((r_exps, r_coeff)) = residual.terms.last_key_value() else {
                return Some(root);
            };
            let (q, rem) = r_coeff.div_rem(&twice_lead);
            if !rem.is_zero() {
                return None;
            }
            let mut t_exps = Vec::with_capacity(self.arity);
            for (&re, &be) in r_exps.iter().zip(&root_exps) {
                if re < be {
                    return None;
                }
                t_exps.push(re - be);
            }
            root.add_term(t_exps, q);
        }
        None
    }

    /// Render with symbol names from `ctx`, terms in descending
    /// lexicographic order.
    pub fn display<'a>(&'a self, ctx: &'a Context) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ctx }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    ctx: &'a Context,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        assert_eq!(self.poly.arity, self.ctx.len(), "mismatched context");
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (exps, coeff)) in self.poly.terms.iter().rev().enumerate() {
            let mag = coeff.magnitude();
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = exps.iter().all(|&e| e == 0);
            let mut wrote_factor = false;
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
                wrote_factor = true;
            }
            for (idx, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ctx.name(Symbol(idx)))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}
