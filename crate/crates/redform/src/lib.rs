//! Exact reduced forms of block-lower-triangular linear differential systems
//! `Y' = A(x) Y` over `Q(x)` and the Lie algebras of their Galois groups.

macro_rules! impl_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                $crate::field::Ring::add(&self, &o)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                $crate::field::Ring::add(self, o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                $crate::field::Ring::sub(&self, &o)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                $crate::field::Ring::sub(self, o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                $crate::field::Ring::mul(&self, &o)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                $crate::field::Ring::mul(self, o)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::field::Ring::neg(&self)
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::field::Ring::neg(self)
            }
        }
    };
}

macro_rules! impl_div {
    ($t:ty) => {
        impl std::ops::Div for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t {
                $crate::field::Field::div(&self, &o)
            }
        }
        impl<'a> std::ops::Div<&'a $t> for &'a $t {
            type Output = $t;
            fn div(self, o: &$t) -> $t {
                $crate::field::Field::div(self, o)
            }
        }
    };
}

pub mod adjoint;
pub mod cli;
pub mod diffsys;
pub mod doc;
mod error;
pub mod field;
pub mod groupgen;
pub mod lie;
pub mod ratsol;
pub mod reduction;

pub use error::{Error, Result};
