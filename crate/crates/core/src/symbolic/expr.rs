//! Expression syntax trees.

use num_bigint::BigUint;

/// An unevaluated arithmetic expression over named symbols.
///
/// Division and square roots may appear anywhere in the tree; whether they
/// make sense (nonzero denominators, a single radical layer) is checked at
/// canonicalization, not here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Symbol(String),
    Integer(BigUint),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn symbol(name: &str) -> Self {
        Expr::Symbol(name.to_owned())
    }

    pub fn integer(value: u64) -> Self {
        Expr::Integer(BigUint::from(value))
    }
}
