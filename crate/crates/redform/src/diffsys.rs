//! Block-lower-triangular systems, gauge transformations and Wei-Norman
//! decompositions.

use std::collections::BTreeMap;

use crate::field::{split_rational, Const, Matrix, RatFunc, Ring, UPoly, Q};
use crate::ratsol::principal_part;
use crate::{Error, Result};

/// `Y' = A·Y` with `A` block-lower-triangular for `partition`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffSystem {
    a: Matrix<RatFunc>,
    partition: Vec<usize>,
}

impl DiffSystem {
    pub fn new(a: Matrix<RatFunc>, partition: Vec<usize>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Contract(format!(
                "matrix is {}x{}, not square",
                a.rows(),
                a.cols()
            )));
        }
        if partition.iter().sum::<usize>() != a.rows() || partition.contains(&0) {
            return Err(Error::Contract(format!(
                "partition {partition:?} does not sum to {}",
                a.rows()
            )));
        }
        let offs = offsets(&partition);
        for (bi, &oi) in offs.iter().enumerate() {
            for (bj, &oj) in offs.iter().enumerate().skip(bi + 1) {
                for i in oi..oi + partition[bi] {
                    for j in oj..oj + partition[bj] {
                        if !a.get(i, j).is_zero() {
                            return Err(Error::Contract(format!(
                                "entry ({}, {}) above the block diagonal is nonzero",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(DiffSystem { a, partition })
    }

    pub fn single_block(a: Matrix<RatFunc>) -> Result<Self> {
        let n = a.rows();
        DiffSystem::new(a, vec![n])
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.a
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn num_blocks(&self) -> usize {
        self.partition.len()
    }

    /// Start row of each diagonal block.
    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.partition)
    }

    pub fn block(&self, i: usize, j: usize) -> Matrix<RatFunc> {
        let o = self.offsets();
        self.a
            .submatrix(o[i], o[j], self.partition[i], self.partition[j])
    }

    /// Sizes `(n₁, n₂)` of the two super-blocks when the first `cut` blocks
    /// form the top one.
    pub fn cut_sizes(&self, cut: usize) -> Result<(usize, usize)> {
        if cut == 0 || cut >= self.partition.len() {
            return Err(Error::Contract(format!(
                "cut {cut} does not split {} blocks in two",
                self.partition.len()
            )));
        }
        let n1: usize = self.partition[..cut].iter().sum();
        Ok((n1, self.dim() - n1))
    }

    /// `(A₁, A₂, S)` for the cut: top-left, bottom-right and lower-left blocks.
    pub fn cut_blocks(
        &self,
        cut: usize,
    ) -> Result<(Matrix<RatFunc>, Matrix<RatFunc>, Matrix<RatFunc>)> {
        let (n1, n2) = self.cut_sizes(cut)?;
        Ok((
            self.a.submatrix(0, 0, n1, n1),
            self.a.submatrix(n1, n1, n2, n2),
            self.a.submatrix(n1, 0, n2, n1),
        ))
    }

    /// Applies a gauge transformation; the partition must survive.
    pub fn gauge(&self, p: &GaugeMatrix) -> Result<DiffSystem> {
        DiffSystem::new(gauge_transform(p, &self.a)?, self.partition.clone())
    }
}

fn offsets(partition: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(partition.len());
    let mut acc = 0;
    for &p in partition {
        o.push(acc);
        acc += p;
    }
    o
}

/// Invertible matrix over `Q(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeMatrix {
    p: Matrix<RatFunc>,
    inv: Matrix<RatFunc>,
}

impl GaugeMatrix {
    pub fn new(p: Matrix<RatFunc>) -> Result<Self> {
        let inv = p.inverse().ok_or(Error::SingularGauge)?;
        Ok(GaugeMatrix { p, inv })
    }

    pub fn identity(n: usize) -> Self {
        GaugeMatrix {
            p: Matrix::identity(n),
            inv: Matrix::identity(n),
        }
    }

    /// `Id + B` where `B` is nonzero only in the lower-left `n₂×n₁` block.
    pub fn from_sub(n1: usize, b: &Matrix<RatFunc>) -> Self {
        let n = n1 + b.rows();
        let mut p = Matrix::identity(n);
        p.set_block(n1, 0, b);
        let mut inv = Matrix::identity(n);
        inv.set_block(n1, 0, &b.neg());
        GaugeMatrix { p, inv }
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.p
    }

    pub fn inverse(&self) -> &Matrix<RatFunc> {
        &self.inv
    }

    /// `self·other`: applying `other` first, then `self`.
    pub fn compose(&self, other: &GaugeMatrix) -> GaugeMatrix {
        GaugeMatrix {
            p: self.p.mul(&other.p),
            inv: other.inv.mul(&self.inv),
        }
    }
}

/// `P[A] = P·A·P⁻¹ + P'·P⁻¹`.
pub fn gauge_transform(p: &GaugeMatrix, a: &Matrix<RatFunc>) -> Result<Matrix<RatFunc>> {
    if p.p.rows() != a.rows() {
        return Err(Error::Contract("gauge size mismatch".into()));
    }
    Ok(p.p.mul(a).add(&p.p.derivative()).mul(&p.inv))
}

/// `A = A_diag + A_sub` for a two-block cut.
pub fn split_diag_sub(a: &DiffSystem, cut: usize) -> Result<(Matrix<RatFunc>, Matrix<RatFunc>)> {
    let (n1, n2) = a.cut_sizes(cut)?;
    let s = a.matrix().submatrix(n1, 0, n2, n1);
    let mut diag = a.matrix().clone();
    diag.set_block(n1, 0, &Matrix::zeros(n2, n1));
    let mut sub = Matrix::zeros(n1 + n2, n1 + n2);
    sub.set_block(n1, 0, &s);
    Ok((diag, sub))
}

/// `A = Σ aᵢ·Mᵢ` with `𝒞`-independent `aᵢ` and constant `Mᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeiNorman {
    pub coeffs: Vec<RatFunc>,
    pub gens: Vec<Matrix<Const>>,
}

impl WeiNorman {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn reconstruct(&self, rows: usize, cols: usize) -> Matrix<RatFunc> {
        let mut acc = Matrix::zeros(rows, cols);
        for (a, m) in self.coeffs.iter().zip(&self.gens) {
            acc = acc.add(&m.map(|c| a.scale(c)));
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum BasisFn {
    Mono(usize),
    Pole(Q, usize),
    /// `x^k / L` for a common denominator `L` with irrational roots.
    Generic(usize),
}

fn basis_value(b: &BasisFn, common: &UPoly) -> RatFunc {
    match b {
        BasisFn::Mono(k) => RatFunc::from_poly(UPoly::monomial(Const::one(), *k)),
        BasisFn::Pole(p, k) => RatFunc::pole(&Const::rat(p.clone()), *k),
        BasisFn::Generic(k) => RatFunc::new(UPoly::monomial(Const::one(), *k), common.clone()),
    }
}

/// Expansion of `f` on monomials and rational poles (or on `x^k/L`).
fn expand(f: &RatFunc, common: &UPoly, split: bool) -> BTreeMap<BasisFn, Const> {
    let mut out = BTreeMap::new();
    if f.is_zero() {
        return out;
    }
    if !split {
        let n = f.numer().mul(&common.div_exact(f.denom()));
        for (k, c) in n.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.insert(BasisFn::Generic(k), c.clone());
            }
        }
        return out;
    }
    let (q, _) = f.numer().divrem(f.denom());
    for (k, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.insert(BasisFn::Mono(k), c.clone());
        }
    }
    if !f.denom().is_const() {
        for (p, m) in split_rational(f.denom()).expect("split checked by caller") {
            let pp = principal_part(f, &Const::rat(p.clone()), m);
            for (idx, c) in pp.into_iter().enumerate() {
                if !c.is_zero() {
                    out.insert(BasisFn::Pole(p.clone(), m - idx), c);
                }
            }
        }
    }
    out
}

/// Wei-Norman decomposition of a rational-function matrix.
pub fn wei_norman(m: &Matrix<RatFunc>) -> WeiNorman {
    let mut common = UPoly::one();
    for v in m.entries() {
        if !v.is_zero() {
            common = UPoly::lcm(&common, v.denom());
        }
    }
    let split = common.is_const() || split_rational(&common).is_ok();
    let expansions: Vec<BTreeMap<BasisFn, Const>> = m
        .entries()
        .iter()
        .map(|v| expand(v, &common, split))
        .collect();
    let mut keys: Vec<BasisFn> = expansions.iter().flat_map(|e| e.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    if keys.is_empty() {
        return WeiNorman {
            coeffs: Vec::new(),
            gens: Vec::new(),
        };
    }
    let rows: Vec<Vec<Const>> = expansions
        .iter()
        .filter(|e| !e.is_empty())
        .map(|e| {
            keys.iter()
                .map(|k| e.get(k).cloned().unwrap_or_else(Const::zero))
                .collect()
        })
        .collect();
    let r = Matrix::from_rows(rows).rref();
    let nb = r.pivots.len();
    let coeffs: Vec<RatFunc> = (0..nb)
        .map(|i| {
            let mut acc = RatFunc::zero();
            for (k, key) in keys.iter().enumerate() {
                let c = r.matrix.get(i, k);
                if !c.is_zero() {
                    acc = acc.add(&basis_value(key, &common).scale(c));
                }
            }
            acc
        })
        .collect();
    let gens: Vec<Matrix<Const>> = (0..nb)
        .map(|i| {
            let key = &keys[r.pivots[i]];
            Matrix::from_fn(m.rows(), m.cols(), |a, b| {
                expansions[a * m.cols() + b]
                    .get(key)
                    .cloned()
                    .unwrap_or_else(Const::zero)
            })
        })
        .collect();
    WeiNorman { coeffs, gens }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s, "x", &[]).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix<RatFunc> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| rf(s)).collect())
                .collect(),
        )
    }

    #[test]
    fn rejects_upper_entries() {
        let a = mat(&[&["1", "x"], &["0", "1"]]);
        let e = DiffSystem::new(a, vec![1, 1]).unwrap_err();
        assert_eq!(
            e,
            Error::Contract("entry (1, 2) above the block diagonal is nonzero".into())
        );
    }

    #[test]
    fn identity_gauge() {
        let a = mat(&[&["1", "0"], &["x", "1/x"]]);
        let p = GaugeMatrix::identity(2);
        assert_eq!(gauge_transform(&p, &a).unwrap(), a);
    }

    #[test]
    fn singular_gauge() {
        let p = mat(&[&["1", "x"], &["1", "x"]]);
        assert_eq!(GaugeMatrix::new(p).unwrap_err(), Error::SingularGauge);
    }

    #[test]
    fn wei_norman_constant_and_zero() {
        let c = mat(&[&["1", "2"], &["3", "4"]]);
        let w = wei_norman(&c);
        assert_eq!(w.coeffs, vec![RatFunc::one()]);
        assert_eq!(w.reconstruct(2, 2), c);
        assert!(wei_norman(&mat(&[&["0"]])).is_empty());
    }

    #[test]
    fn wei_norman_poles() {
        let a = mat(&[&["1/x + x", "1/(x-1)^2"], &["0", "2*x + 2/x"]]);
        let w = wei_norman(&a);
        assert_eq!(w.len(), 2);
        assert_eq!(w.reconstruct(2, 2), a);
        let a = mat(&[&["1/x + x", "1/(x-1)^2"], &["0", "2*x + 3/x"]]);
        let w = wei_norman(&a);
        assert_eq!(w.len(), 3);
        assert_eq!(w.reconstruct(2, 2), a);
    }

    #[test]
    fn split_reconstructs() {
        let a = mat(&[&["1", "0", "0"], &["x", "2", "0"], &["1/x", "3", "x"]]);
        let s = DiffSystem::new(a.clone(), vec![1, 2]).unwrap();
        let (d, u) = split_diag_sub(&s, 1).unwrap();
        assert_eq!(d.add(&u), a);
        assert!(u.submatrix(0, 0, 1, 3).is_zero());
    }
}
