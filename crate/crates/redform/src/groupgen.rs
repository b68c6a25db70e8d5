//! Generators of a Zariski-dense subgroup of a connected matrix group from
//! a basis of its Lie algebra.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{integer_kernel, integer_relation_lattice, Const, Matrix, Ring, Q};
use crate::lie::{dunford, LieBasis};
use crate::{Error, Result};

/// `exp(t·N)` for nilpotent `N`, as a finite sum of powers of `N`.
pub fn exp_nilpotent(n: &Matrix<Const>, t: &Const) -> Result<Matrix<Const>> {
    let dim = n.rows();
    let mut acc = Matrix::identity(dim);
    let mut term = Matrix::<Const>::identity(dim);
    for k in 1..=dim {
        term = term.mul(n).scale(&t.mul(&Const::frac(1, k as i64)));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&term);
    }
    if !n.pow(dim).is_zero() {
        return Err(Error::NotNilpotent);
    }
    Ok(acc)
}

/// Basis of `{e ∈ ℤⁿ : Σ eᵢ·λᵢ = 0}`: the torus `Diag(a)` with `∏ aᵢ^eᵢ = 1`.
pub fn torus_relations(lambda: &[Q]) -> Vec<Vec<BigInt>> {
    integer_relation_lattice(lambda)
}

/// Closure of the group generated by `exp(S)` for one semisimple `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusFamily {
    /// Columns are eigenvectors of `S`.
    pub basis: Matrix<Const>,
    pub exponents: Vec<Q>,
    pub relations: Vec<Vec<BigInt>>,
}

impl TorusFamily {
    /// Whether `Diag(a)` satisfies every multiplicative relation.
    pub fn satisfies(&self, a: &[Q]) -> bool {
        a.len() == self.exponents.len()
            && a.iter().all(|v| !Zero::is_zero(v))
            && self.relations.iter().all(|e| {
                let mut p = <Q as One>::one();
                for (v, k) in a.iter().zip(e) {
                    let k = k.to_i32().expect("small exponent");
                    let f = if k >= 0 { v.clone() } else { v.recip() };
                    for _ in 0..k.unsigned_abs() {
                        p *= &f;
                    }
                }
                One::is_one(&p)
            })
    }

    /// `basis·Diag(a)·basis⁻¹`, or `None` off the torus.
    pub fn element(&self, a: &[Q]) -> Option<Matrix<Const>> {
        if !self.satisfies(a) {
            return None;
        }
        let d: Vec<Const> = a.iter().map(|v| Const::rat(v.clone())).collect();
        let inv = self.basis.inverse()?;
        Some(self.basis.mul(&Matrix::diag(&d)).mul(&inv))
    }

    /// Integer directions `m` with `2^m` on the torus.
    pub fn free_directions(&self) -> Vec<Vec<BigInt>> {
        integer_kernel(&self.relations, self.exponents.len())
    }

    /// Whether the torus is the scalar group `t·Id`.
    pub fn is_scalar(&self) -> bool {
        let free = self.free_directions();
        free.len() == 1 && free[0].iter().all(|v| v.abs().is_one() && v == &free[0][0])
    }
}

/// `exp(t·N)` with `t` a fresh parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct UnipotentFamily {
    pub nilpotent: Matrix<Const>,
    pub param: usize,
    pub matrix: Matrix<Const>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseGeneratorSet {
    pub n: usize,
    pub tori: Vec<TorusFamily>,
    pub unipotent: Vec<UnipotentFamily>,
}

impl DenseGeneratorSet {
    /// Parameter names `t1, t2, …` indexed like the Lie basis.
    pub fn param_name(i: usize) -> String {
        format!("t{}", i + 1)
    }
}

/// Splits each basis element as `S + N` and emits the torus of `exp(S)` and
/// the one-parameter unipotent family `exp(t·N)`.
pub fn dense_generators(lie: &LieBasis) -> Result<DenseGeneratorSet> {
    let mut tori = Vec::new();
    let mut unipotent = Vec::new();
    for (i, b) in lie.basis.iter().enumerate() {
        let dp = dunford(b)?;
        if !dp.d.is_zero() {
            tori.push(TorusFamily {
                basis: dp.p.clone(),
                relations: torus_relations(&dp.eigenvalues),
                exponents: dp.eigenvalues.clone(),
            });
        }
        if !dp.n.is_zero() {
            unipotent.push(UnipotentFamily {
                matrix: exp_nilpotent(&dp.n, &Const::param(i))?,
                nilpotent: dp.n,
                param: i,
            });
        }
    }
    Ok(DenseGeneratorSet {
        n: lie.n,
        tori,
        unipotent,
    })
}
