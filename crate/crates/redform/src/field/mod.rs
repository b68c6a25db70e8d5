//! Exact arithmetic: rationals, parametric constants, polynomials and
//! rational functions in `x`, dense matrices and integer lattices.

mod constant;
mod lattice;
mod matrix;
mod mpoly;
mod parse;
mod ratfunc;
mod rational;
mod roots;
mod upoly;

use std::fmt;

pub use constant::Const;
pub use lattice::{hermite_normal_form, integer_kernel, integer_relation_lattice};
pub use matrix::{in_span, span_basis, span_rank, Matrix, Rref};
pub use mpoly::{MPoly, Mono};
pub use parse::{parse_const, parse_ratfunc, ParseError};
pub use ratfunc::RatFunc;
pub use rational::{q, qi, Q};
pub use roots::{
    max_integer_root, rational_roots, split_rational, squarefree, squarefree_and_rational_roots,
    Squarefree,
};
pub use upoly::UPoly;

/// Commutative ring with identity, used by the generic matrix code.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Rough size used to pick cheap pivots; smaller is better.
    fn weight(&self) -> usize {
        0
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

/// Elements that carry the derivation d/dx (constants differentiate to 0).
pub trait Differential: Ring {
    fn derivative(&self) -> Self;
}
