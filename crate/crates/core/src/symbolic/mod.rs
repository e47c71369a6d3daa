//! A miniature computer-algebra core: expression parsing, sparse multivariate
//! polynomial arithmetic, canonical radical forms, limits at infinity, and
//! identity checking.
//!
//! Every symbol is assumed to range over the nonnegative integers. That
//! single global assumption is what makes radical arithmetic sound here:
//! `sqrt(a) * sqrt(b) = sqrt(a*b)` holds because `a` and `b` never go
//! negative, and `sqrt(x^2) = x` needs no absolute value.
//!
//! # Expression grammar
//!
//! [`parse`] accepts the following grammar (whitespace insignificant):
//!
//! ```text
//! expr    := term  { ("+" | "-") term }          left-associative
//! term    := unary { ("*" | "/") unary }         left-associative
//! unary   := "-" unary | primary
//! primary := integer | identifier | "sqrt" "(" expr ")" | "(" expr ")"
//! ```
//!
//! Integer literals are nonnegative; negative constants are written with the
//! unary minus. `sqrt` is reserved and cannot be used as a symbol name.
//! Syntax errors carry the byte offset at which parsing failed.
//!
//! # Canonical radical form
//!
//! [`canonicalize`] rewrites any expression into a [`SurdExpr`]
//! `(P/Q)*sqrt(R)` with `P`, `Q`, `R` polynomials. A single radical layer is
//! supported: taking `sqrt` of an expression whose canonical form still
//! carries a radical is rejected, as is adding radicals with distinct
//! radicands (the sum is not representable in this form).

mod expr;
mod limit;
mod parse;
mod poly;
mod surd_expr;

pub use expr::Expr;
pub use limit::{limit_at_infinity, LimitResult};
pub use parse::{parse, ParseError};
pub use poly::{Polynomial, SignClass};
pub use surd_expr::{canonicalize, is_identically_equal, SurdExpr, Verdict};

use thiserror::Error;

/// Errors from canonicalization, polynomial queries, and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    /// An identifier in the expression is not registered in the context.
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    /// `sqrt` applied to an expression whose canonical form still carries a
    /// radical.
    #[error("nested radical unsupported")]
    NestedRadical,
    /// Division by the zero polynomial (syntactically zero denominator).
    #[error("zero denominator")]
    ZeroDenominator,
    /// Addition or subtraction of radicals with distinct radicands; the
    /// result is not representable as a single `(P/Q)*sqrt(R)`.
    #[error("sum of distinct radicals unsupported")]
    RadicalSum,
    /// Degree or leading coefficient requested of the zero polynomial.
    #[error("degree of zero polynomial undefined")]
    ZeroPolynomialDegree,
    /// Evaluation point makes a denominator or radicand zero (or the radicand
    /// negative), so the value is undefined there.
    #[error("evaluation at singularity")]
    Singularity,
}

/// An interned symbol: an index into its [`Context`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub(crate) usize);

/// A fixed, ordered set of symbol names. All polynomials and canonical forms
/// are built relative to one context; exponent vectors index into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    names: Vec<String>,
}

impl Context {
    /// Builds a context over the given names, in order.
    ///
    /// Panics on duplicate names or on the reserved name `sqrt`.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, name) in names.iter().enumerate() {
            assert!(name != "sqrt", "sqrt is reserved");
            assert!(!names[..i].contains(name), "duplicate symbol name {name:?}");
        }
        Self { names }
    }

    /// The four confusion-matrix counts, in the order tp, tn, fp, fn.
    pub fn confusion_counts() -> Self {
        Self::new(["tp", "tn", "fp", "fn"])
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(Symbol)
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.0]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(Symbol)
    }
}
