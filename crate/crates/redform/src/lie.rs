//! Algebraic envelopes of Lie algebras of constant matrices.

use crate::diffsys::wei_norman;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::field::{
    in_span, integer_relation_lattice, rational_roots, span_basis, split_rational, squarefree,
    Const, Differential, Matrix, RatFunc, Ring, UPoly, Q,
};
use crate::{Error, Result};

/// Basis of a Lie algebra of `n×n` constant matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct LieBasis {
    pub n: usize,
    pub basis: Vec<Matrix<Const>>,
}

impl LieBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vecs(&self) -> Vec<Vec<Const>> {
        self.basis.iter().map(|b| b.vec_rows()).collect()
    }

    pub fn contains(&self, m: &Matrix<Const>) -> bool {
        in_span(&self.vecs(), &m.vec_rows())
    }

    pub fn contains_all(&self, ms: &[Matrix<Const>]) -> bool {
        let vs = self.vecs();
        ms.iter().all(|m| in_span(&vs, &m.vec_rows()))
    }

    pub fn same_span(&self, o: &LieBasis) -> bool {
        self.dim() == o.dim() && self.contains_all(&o.basis)
    }

    /// Whether every bracket of basis elements lies in the span.
    pub fn is_closed(&self) -> bool {
        let vs = self.vecs();
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if !in_span(&vs, &a.bracket(b).vec_rows()) {
                    return false;
                }
            }
        }
        true
    }

    /// Basis in reduced row-echelon form of the vectorized matrices.
    pub fn canonical(&self) -> LieBasis {
        let vs = span_basis(&self.vecs(), self.n * self.n);
        LieBasis {
            n: self.n,
            basis: vs
                .iter()
                .map(|v| Matrix::from_vec_rows(self.n, self.n, v))
                .collect(),
        }
    }
}

struct SpanBuilder {
    n: usize,
    basis: Vec<Matrix<Const>>,
    vecs: Vec<Vec<Const>>,
}

impl SpanBuilder {
    fn new(n: usize) -> Self {
        SpanBuilder {
            n,
            basis: Vec::new(),
            vecs: Vec::new(),
        }
    }

    fn push(&mut self, m: Matrix<Const>) -> bool {
        let v = m.vec_rows();
        if in_span(&self.vecs, &v) {
            return false;
        }
        self.vecs.push(v);
        self.basis.push(m);
        true
    }

    fn finish(self) -> LieBasis {
        LieBasis {
            n: self.n,
            basis: self.basis,
        }
    }
}

/// Smallest bracket-stable span containing `mats`.
pub fn bracket_closure(mats: &[Matrix<Const>], n: usize) -> LieBasis {
    let mut sb = SpanBuilder::new(n);
    for m in mats {
        sb.push(m.clone());
    }
    let mut i = 0;
    while i < sb.basis.len() {
        for j in 0..i {
            let c = sb.basis[i].bracket(&sb.basis[j]);
            sb.push(c);
        }
        i += 1;
    }
    sb.finish()
}

/// Additive Jordan decomposition `B = D + N`.
#[derive(Clone, Debug, PartialEq)]
pub struct DunfordPair {
    pub d: Matrix<Const>,
    pub n: Matrix<Const>,
    /// Columns are generalized eigenvectors: `D = P·Diag(d)·P⁻¹`.
    pub p: Matrix<Const>,
    pub eigenvalues: Vec<Q>,
}

pub fn dunford(b: &Matrix<Const>) -> Result<DunfordPair> {
    let n = b.rows();
    if n == 0 {
        return Ok(DunfordPair {
            d: b.clone(),
            n: b.clone(),
            p: b.clone(),
            eigenvalues: Vec::new(),
        });
    }
    let cp = b.char_poly();
    if !cp.is_rational() {
        return Err(Error::ParametricUnsupported(
            "matrix with parameter entries".into(),
        ));
    }
    let roots = split_rational(&cp)?;
    let mut cols: Vec<Vec<Const>> = Vec::new();
    let mut eigenvalues = Vec::new();
    for (lam, m) in &roots {
        let shifted = b.sub(&Matrix::identity(n).scale(&Const::rat(lam.clone())));
        let ker = shifted.pow(*m).kernel();
        if ker.len() != *m {
            return Err(Error::CheckFailed(
                "generalized eigenspace of wrong dimension".into(),
            ));
        }
        for v in ker {
            cols.push(v);
            eigenvalues.push(lam.clone());
        }
    }
    let p = Matrix::from_cols(&cols);
    let pinv = p
        .inverse()
        .ok_or(Error::CheckFailed("eigenvector basis is singular".into()))?;
    let diag: Vec<Const> = eigenvalues.iter().map(|v| Const::rat(v.clone())).collect();
    let d = p.mul(&Matrix::diag(&diag)).mul(&pinv);
    let nil = b.sub(&d);
    Ok(DunfordPair {
        d,
        n: nil,
        p,
        eigenvalues,
    })
}

/// Semisimple part of `b`, by Newton iteration on the squarefree part of its
/// characteristic polynomial.
pub fn semisimple_part(b: &Matrix<Const>) -> Result<Matrix<Const>> {
    let n = b.rows();
    let f = squarefree_part(b)?;
    let df = f.derivative();
    let mut s = b.clone();
    for _ in 0..=n {
        let fs = s.eval_poly(&f);
        if fs.is_zero() {
            return Ok(s);
        }
        let inv = s
            .eval_poly(&df)
            .inverse()
            .ok_or_else(|| Error::CheckFailed("Newton step is singular".into()))?;
        s = s.sub(&fs.mul(&inv));
    }
    Err(Error::NonConvergence(n))
}

fn squarefree_part(b: &Matrix<Const>) -> Result<UPoly> {
    let cp = b.char_poly();
    if !cp.is_rational() {
        return Err(Error::ParametricUnsupported(
            "matrix with parameter entries".into(),
        ));
    }
    Ok(squarefree(&cp)
        .into_iter()
        .fold(UPoly::constant(Const::one()), |acc, (f, _)| acc.mul(&f)))
}

/// Irreducible factor over Q of degree at most two.
enum Factor {
    Root(Q),
    /// `t² − s·t + p` with `s² − 4p = k²·m`, `m` squarefree.
    Quadratic {
        poly: UPoly,
        half: Q,
        radicand: BigInt,
    },
}

fn rat(c: &Const) -> Q {
    c.as_rational().cloned().expect("rational polynomial")
}

/// Factors a squarefree rational polynomial into factors of degree at most two,
/// handling cofactors that are even polynomials through `u = t²`.
fn small_factors(f: &UPoly) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    for r in rational_roots(&rest)? {
        rest = rest.div_exact(&UPoly::linear(&Const::rat(r.clone())));
        out.push(Factor::Root(r));
    }
    let quads: Vec<UPoly> = match rest.deg() {
        d if d <= 0 => Vec::new(),
        2 => vec![rest.clone()],
        d if d % 2 == 0
            && (0..=d as usize)
                .step_by(2)
                .all(|k| rest.coeff(k + 1).is_zero()) =>
        {
            let h = UPoly::new((0..=d as usize).step_by(2).map(|k| rest.coeff(k)).collect());
            let us = rational_roots(&h)?;
            if us.len() != h.deg() as usize {
                return Err(Error::AlgebraicExtensionRequired(format!(
                    "factor {rest} of degree {d}"
                )));
            }
            us.into_iter()
                .map(|u| UPoly::new(vec![Const::rat(-u), Const::zero(), Const::one()]))
                .collect()
        }
        d => {
            return Err(Error::AlgebraicExtensionRequired(format!(
                "factor {rest} of degree {d}"
            )))
        }
    };
    for poly in quads {
        let s = -rat(&poly.coeff(1));
        let p = rat(&poly.coeff(0));
        let disc = &s * &s - Q::from(BigInt::from(4)) * p;
        let radicand = squarefree_kernel(&(disc.numer() * disc.denom()))?;
        out.push(Factor::Quadratic {
            poly,
            half: s / Q::from(BigInt::from(2)),
            radicand,
        });
    }
    Ok(out)
}

/// Squarefree part of a nonzero integer, sign included.
fn squarefree_kernel(n: &BigInt) -> Result<BigInt> {
    let mut rest = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if p > BigInt::from(1_000_000u32) {
            return Err(Error::AlgebraicExtensionRequired(format!(
                "cannot factor {n}"
            )));
        }
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out *= rest;
    Ok(if n.is_negative() { -out } else { out })
}

/// Lie algebra of the Zariski closure of the group generated by `exp(s)`,
/// for semisimple `s` whose eigenvalues have degree at most two over Q.
fn semisimple_envelope(s: &Matrix<Const>) -> Result<Vec<Matrix<Const>>> {
    let n = s.rows();
    if s.is_zero() {
        return Ok(Vec::new());
    }
    let factors = small_factors(&squarefree_part(s)?)?;
    let mut cols: Vec<Vec<Const>> = Vec::new();
    let mut ranges = Vec::new();
    for f in &factors {
        let q = match f {
            Factor::Root(r) => UPoly::linear(&Const::rat(r.clone())),
            Factor::Quadratic { poly, .. } => poly.clone(),
        };
        let ker = s.eval_poly(&q).kernel();
        ranges.push(cols.len()..cols.len() + ker.len());
        cols.extend(ker);
    }
    if cols.len() != n {
        return Err(Error::CheckFailed("eigenspaces do not span".into()));
    }
    let basis = Matrix::from_cols(&cols);
    let inv = basis
        .inverse()
        .ok_or_else(|| Error::CheckFailed("eigenspace basis is singular".into()))?;
    let projector = |r: &std::ops::Range<usize>| {
        let d: Vec<Const> = (0..n)
            .map(|i| {
                if r.contains(&i) {
                    Const::one()
                } else {
                    Const::zero()
                }
            })
            .collect();
        basis.mul(&Matrix::diag(&d)).mul(&inv)
    };
    let mut rational = Matrix::zeros(n, n);
    let mut imaginary: BTreeMap<BigInt, Matrix<Const>> = BTreeMap::new();
    let mut values = Vec::new();
    for (f, r) in factors.iter().zip(&ranges) {
        let e = projector(r);
        match f {
            Factor::Root(v) => {
                rational = rational.add(&e.scale(&Const::rat(v.clone())));
                values.push(v.clone());
            }
            Factor::Quadratic { half, radicand, .. } => {
                let h = Const::rat(half.clone());
                rational = rational.add(&e.scale(&h));
                let shifted = s.sub(&Matrix::identity(n).scale(&h)).mul(&e);
                let slot = imaginary
                    .entry(radicand.clone())
                    .or_insert_with(|| Matrix::zeros(n, n));
                *slot = slot.add(&shifted);
                values.push(half.clone());
            }
        }
    }
    let mut out = Vec::new();
    if !rational.is_zero() {
        // Rational parts with independent values split into separate tori.
        let delta = integer_relation_lattice(&values);
        let free: Vec<Vec<Const>> = if delta.is_empty() {
            Matrix::<Const>::identity(values.len()).to_rows()
        } else {
            let rows: Vec<Vec<Const>> = delta
                .iter()
                .map(|r| r.iter().map(|e| Const::rat(Q::from(e.clone()))).collect())
                .collect();
            Matrix::from_rows(rows).kernel()
        };
        for a in free {
            let mut m = Matrix::zeros(n, n);
            for (w, r) in a.iter().zip(&ranges) {
                m = m.add(&projector(r).scale(w));
            }
            out.push(m);
        }
    }
    out.extend(imaginary.into_values().filter(|m| !m.is_zero()));
    Ok(out)
}

/// Smallest algebraic Lie algebra containing one matrix.
pub fn envelope_of_one(b: &Matrix<Const>) -> Result<LieBasis> {
    let n = b.rows();
    let s = semisimple_part(b)?;
    let nil = b.sub(&s);
    let mut sb = SpanBuilder::new(n);
    if !nil.is_zero() {
        sb.push(nil);
    }
    for m in semisimple_envelope(&s)? {
        sb.push(m);
    }
    Ok(sb.finish())
}

/// Smallest algebraic Lie algebra containing `mats`. The derived algebra is
/// algebraic, so only a complement of it needs single-element envelopes.
pub fn algebraic_envelope(mats: &[Matrix<Const>], n: usize) -> Result<LieBasis> {
    let mut current = bracket_closure(mats, n);
    for _ in 0..=n * n {
        let derived = derived_algebra(&current);
        let mut span = SpanBuilder::new(n);
        for d in derived.basis {
            span.push(d);
        }
        let mut gens = current.basis.clone();
        for b in current.canonical().basis {
            if span.push(b.clone()) {
                gens.extend(envelope_of_one(&b)?.basis);
            }
        }
        let next = bracket_closure(&gens, n);
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
    Err(Error::NonConvergence(n * n))
}

/// Span of all brackets of basis elements.
pub fn derived_algebra(l: &LieBasis) -> LieBasis {
    let mut sb = SpanBuilder::new(l.n);
    for (i, a) in l.basis.iter().enumerate() {
        for b in &l.basis[i + 1..] {
            sb.push(a.bracket(b));
        }
    }
    sb.finish()
}

/// Algebraic envelope of the Wei-Norman generators of `A`.
pub fn lie_of_matrix(a: &Matrix<RatFunc>) -> Result<LieBasis> {
    let wn = wei_norman(a);
    algebraic_envelope(&wn.gens, a.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<Const> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&a| Const::int(a)).collect())
                .collect(),
        )
    }

    #[test]
    fn sl2_from_two_nilpotents() {
        let l = bracket_closure(&[m(&[&[0, 1], &[0, 0]]), m(&[&[0, 0], &[1, 0]])], 2);
        assert_eq!(l.dim(), 3);
        assert!(l.contains(&m(&[&[1, 0], &[0, -1]])));
        assert!(l.is_closed());
    }

    #[test]
    fn commuting_diagonals_unchanged() {
        let l = bracket_closure(&[m(&[&[1, 0], &[0, 2]]), m(&[&[3, 0], &[0, 1]])], 2);
        assert_eq!(l.dim(), 2);
        assert_eq!(bracket_closure(&[m(&[&[0, 0], &[0, 0]])], 2).dim(), 0);
    }

    #[test]
    fn dunford_of_jordan_block() {
        let b = m(&[&[1, 1], &[0, 1]]);
        let dp = dunford(&b).unwrap();
        assert!(dp.d.is_identity());
        assert_eq!(dp.n, m(&[&[0, 1], &[0, 0]]));
        let nil = m(&[&[0, 1], &[0, 0]]);
        let dn = dunford(&nil).unwrap();
        assert!(dn.d.is_zero());
        assert_eq!(dn.n, nil);
    }

    #[test]
    fn envelopes_of_one() {
        let d = m(&[&[1, 0], &[0, 2]]);
        let e = envelope_of_one(&d).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(e.contains(&d));
        assert_eq!(envelope_of_one(&Matrix::identity(2)).unwrap().dim(), 1);
        assert_eq!(envelope_of_one(&m(&[&[0, 1], &[0, 0]])).unwrap().dim(), 1);
        // 1 and 1/2 are dependent; 1 and 0 leave a two-dimensional torus.
        let t = Matrix::diag(&[Const::int(1), Const::int(0)]);
        assert_eq!(envelope_of_one(&t).unwrap().dim(), 1);
        let j = m(&[&[2, 1], &[0, 2]]);
        assert_eq!(envelope_of_one(&j).unwrap().dim(), 2);
    }

    #[test]
    fn irrational_eigenvalues_rejected() {
        let r = m(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(
            envelope_of_one(&r),
            Err(Error::AlgebraicExtensionRequired(_))
        ));
    }

    #[test]
    fn quadratic_eigenvalues() {
        let rot = m(&[&[0, -1], &[1, 0]]);
        let e = envelope_of_one(&rot).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(e.contains(&rot));
        let sqrt2 = m(&[&[0, 2], &[1, 0]]);
        assert_eq!(envelope_of_one(&sqrt2).unwrap().dim(), 1);
        // Rotation plus a shift: the rational part and the imaginary part separate.
        let spiral = m(&[&[1, -1], &[1, 1]]);
        let e = envelope_of_one(&spiral).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&Matrix::identity(2)));
    }

    #[test]
    fn semisimple_part_of_jordan_rotation() {
        // Two-by-two rotation block with a nilpotent coupling to a copy of itself.
        let b = m(&[&[0, -1, 1, 0], &[1, 0, 0, 1], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let s = semisimple_part(&b).unwrap();
        let nil = b.sub(&s);
        assert!(nil.pow(2).is_zero());
        assert!(s.bracket(&nil).is_zero());
        assert_eq!(envelope_of_one(&b).unwrap().dim(), 2);
    }

    #[test]
    fn so3_is_its_own_envelope() {
        let gens = [
            m(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
            m(&[&[0, 0, -1], &[0, 0, 0], &[1, 0, 0]]),
        ];
        let l = algebraic_envelope(&gens, 3).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(derived_algebra(&l).dim(), 3);
    }
}
