use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::cyclic::krylov;
use crate::field::{
    max_integer_root, split_rational, Const, Differential, Matrix, RatFunc, Ring, UPoly, Q,
};
use crate::{Error, Result};

/// One rational solution `(F, c)` of `F' = Λ·F + Σ cⱼ·bⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatSol {
    pub f: Vec<RatFunc>,
    pub c: Vec<Const>,
}

/// Basis of the rational solution space.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RatSolSpace {
    pub basis: Vec<RatSol>,
}

impl RatSolSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Linear system for the numerator coefficients `u` of a denominator-bounded
/// ansatz, together with the constant unknowns `c`:
/// `lu·u + lc·c = 0` if and only if the assembled `F` solves the system.
#[derive(Clone, Debug)]
pub struct Ansatz {
    denoms: Vec<UPoly>,
    offsets: Vec<usize>,
    lens: Vec<usize>,
    pub lu: Matrix<Const>,
    pub lc: Matrix<Const>,
}

impl Ansatz {
    pub fn unknowns(&self) -> usize {
        self.lu.cols()
    }

    /// Denominator bound used for each coordinate.
    pub fn denominators(&self) -> &[UPoly] {
        &self.denoms
    }

    /// Numerator degree bound for each coordinate (`None` when forced to 0).
    pub fn degree_bounds(&self) -> Vec<Option<usize>> {
        self.lens.iter().map(|&l| l.checked_sub(1)).collect()
    }

    pub fn assemble(&self, u: &[Const]) -> Vec<RatFunc> {
        self.denoms
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let n = UPoly::new(u[self.offsets[i]..self.offsets[i] + self.lens[i]].to_vec());
                if n.is_zero() {
                    RatFunc::zero()
                } else {
                    RatFunc::new(n, d.clone())
                }
            })
            .collect()
    }

    /// Solvability conditions `M·c = 0`, with `M = Q·lc` and `Q` a basis of
    /// the left kernel of `lu`.
    pub fn conditions(&self) -> Matrix<Const> {
        let t = self.lc.cols();
        if self.lu.rows() == 0 {
            return Matrix::zeros(0, t);
        }
        let q = if self.lu.cols() == 0 {
            Matrix::<Const>::identity(self.lu.rows()).to_rows()
        } else {
            self.lu.left_kernel()
        };
        if q.is_empty() {
            return Matrix::zeros(0, t);
        }
        Matrix::from_rows(q).mul(&self.lc)
    }

    /// Particular solution for fixed `c` plus a basis of homogeneous solutions.
    pub fn solve_for(&self, c: &[Const]) -> Option<(Vec<RatFunc>, Vec<Vec<RatFunc>>)> {
        let rhs = self
            .lc
            .mul_vec(c)
            .iter()
            .map(|v| v.neg())
            .collect::<Vec<_>>();
        let nu = self.unknowns();
        let u = if nu == 0 {
            if rhs.iter().any(|v| !v.is_zero()) {
                return None;
            }
            Vec::new()
        } else if self.lu.rows() == 0 {
            vec![Const::zero(); nu]
        } else {
            self.lu.solve(&rhs)?
        };
        let hom = if nu == 0 {
            Vec::new()
        } else if self.lu.rows() == 0 {
            Matrix::<Const>::identity(nu).to_rows()
        } else {
            self.lu.kernel()
        };
        Some((
            self.assemble(&u),
            hom.iter().map(|h| self.assemble(h)).collect(),
        ))
    }
}

fn falling_factorial_poly(j: usize) -> UPoly {
    let mut p = UPoly::one();
    for k in 0..j {
        p = p.mul(&UPoly::linear(&Const::int(k as i64)));
    }
    p
}

fn rational_indicial(terms: &[(usize, Const)], what: &str) -> Result<UPoly> {
    let mut p = UPoly::zero();
    for (j, c) in terms {
        if !c.is_rational() {
            return Err(Error::ParameterDependentExponent(format!(
                "indicial coefficient {c} at {what}"
            )));
        }
        p = p.add(&falling_factorial_poly(*j).scale(c));
    }
    Ok(p)
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .filter(|v| v.abs() < 100_000)
        .ok_or_else(|| Error::Contract(format!("exponent bound {v} too large")))
}

/// Applies `r` to a row vector: `row·r`.
fn dot(row: &[RatFunc], r: &[RatFunc]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (a, b) in row.iter().zip(r) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc.add(&a.mul(b));
        }
    }
    acc
}

struct CoordBound {
    poles: Vec<(Q, usize)>,
    degree: Option<i64>,
}

fn coordinate_bound(
    lam: &Matrix<RatFunc>,
    rhs: &[Vec<RatFunc>],
    i: usize,
    cands: &[Q],
) -> Result<CoordBound> {
    let m = lam.rows();
    let seed: Vec<RatFunc> = (0..m)
        .map(|k| {
            if k == i {
                RatFunc::one()
            } else {
                RatFunc::zero()
            }
        })
        .collect();
    let kr = krylov(lam, seed);
    let s = kr.rows.len();
    let mut a: Vec<RatFunc> = kr.alpha.iter().map(|v| v.neg()).collect();
    a.push(RatFunc::one());

    let mut rs: Vec<RatFunc> = Vec::new();
    for r in rhs {
        let mut sj = vec![RatFunc::zero()];
        for row in &kr.rows {
            let last = sj.last().unwrap();
            sj.push(last.derivative().add(&dot(row, r)));
        }
        let mut big_r = sj[s].clone();
        for (j, al) in kr.alpha.iter().enumerate() {
            big_r = big_r.sub(&al.mul(&sj[j]));
        }
        if !big_r.is_zero() {
            rs.push(big_r);
        }
    }

    let mut poles = Vec::new();
    for p in cands {
        let pc = Const::rat(p.clone());
        let mut w: Option<i64> = None;
        let mut vals = Vec::new();
        for (j, aj) in a.iter().enumerate() {
            if let Some(v) = aj.valuation_at(&pc) {
                let vj = v - j as i64;
                vals.push((j, vj));
                w = Some(w.map_or(vj, |x: i64| x.min(vj)));
            }
        }
        let w = w.unwrap();
        let terms: Vec<(usize, Const)> = vals
            .iter()
            .filter(|(_, v)| *v == w)
            .map(|(j, _)| (*j, a[*j].lc_at(&pc)))
            .collect();
        let ind = rational_indicial(&terms, &format!("x = {pc}"))?;
        let ind_neg = negate_argument(&ind);
        let mut e: i64 = 0;
        if let Some(r) = max_integer_root(&ind_neg)? {
            if r.is_positive() {
                e = e.max(to_i64(&r)?);
            }
        }
        if let Some(vmin) = rs.iter().filter_map(|r| r.valuation_at(&pc)).min() {
            e = e.max(w - vmin);
        }
        if e > 0 {
            poles.push((p.clone(), e as usize));
        }
    }

    let mut wi: Option<i64> = None;
    let mut degs = Vec::new();
    for (j, aj) in a.iter().enumerate() {
        if let Some(d) = aj.degree() {
            let dj = d - j as i64;
            degs.push((j, dj));
            wi = Some(wi.map_or(dj, |x: i64| x.max(dj)));
        }
    }
    let wi = wi.unwrap();
    let terms: Vec<(usize, Const)> = degs
        .iter()
        .filter(|(_, d)| *d == wi)
        .map(|(j, _)| (*j, a[*j].lc_infinity()))
        .collect();
    let ind = rational_indicial(&terms, "infinity")?;
    let mut degree: Option<i64> = match max_integer_root(&ind)? {
        Some(r) => Some(to_i64(&r)?),
        None => None,
    };
    if let Some(dr) = rs.iter().filter_map(|r| r.degree()).max() {
        let d = dr - wi;
        degree = Some(degree.map_or(d, |x| x.max(d)));
    }
    Ok(CoordBound { poles, degree })
}

/// `p(-ρ)`.
fn negate_argument(p: &UPoly) -> UPoly {
    UPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
            .collect(),
    )
}

fn candidate_poles(lam: &Matrix<RatFunc>, rhs: &[Vec<RatFunc>]) -> Result<Vec<Q>> {
    let mut den = UPoly::one();
    for v in lam.entries().iter().chain(rhs.iter().flatten()) {
        if !v.denom().is_const() {
            den = UPoly::lcm(&den, v.denom());
        }
    }
    Ok(split_rational(&den)?.into_iter().map(|(p, _)| p).collect())
}

/// Builds the bounded ansatz for `F' = Λ·F + Σ cⱼ·bⱼ`.
pub fn ansatz(lam: &Matrix<RatFunc>, rhs: &[Vec<RatFunc>]) -> Result<Ansatz> {
    let m = lam.rows();
    if m == 0 || !lam.is_square() {
        return Err(Error::Contract(
            "system matrix must be square and nonempty".into(),
        ));
    }
    if rhs.iter().any(|b| b.len() != m) {
        return Err(Error::Contract("right-hand side length mismatch".into()));
    }
    let cands = candidate_poles(lam, rhs)?;
    let mut denoms = Vec::with_capacity(m);
    let mut lens = Vec::with_capacity(m);
    for i in 0..m {
        let b = coordinate_bound(lam, rhs, i, &cands)?;
        let mut d = UPoly::one();
        for (p, e) in &b.poles {
            d = d.mul(&UPoly::linear(&Const::rat(p.clone())).pow(*e));
        }
        let len = match b.degree {
            Some(deg) => {
                let top = deg + d.deg();
                if top < 0 {
                    0
                } else {
                    top as usize + 1
                }
            }
            None => 0,
        };
        denoms.push(d);
        lens.push(len);
    }
    let mut offsets = Vec::with_capacity(m);
    let mut nu = 0;
    for l in &lens {
        offsets.push(nu);
        nu += l;
    }
    let t = rhs.len();

    let mut rows_u: Vec<BTreeMap<usize, Const>> = Vec::new();
    let mut rows_c: Vec<BTreeMap<usize, Const>> = Vec::new();
    for i in 0..m {
        let di = &denoms[i];
        let mut l = di.mul(di);
        for k in 0..m {
            let e = lam.get(i, k);
            if !e.is_zero() && lens[k] > 0 {
                l = UPoly::lcm(&l, &e.denom().mul(&denoms[k]));
            }
        }
        for b in rhs {
            if !b[i].is_zero() {
                l = UPoly::lcm(&l, b[i].denom());
            }
        }
        // Each unknown contributes a polynomial; collect coefficient rows.
        let mut cols_u: Vec<(usize, UPoly)> = Vec::new();
        let di_prime = di.derivative();
        let l_over_d2 = l.div_exact(&di.mul(di));
        for j in 0..lens[i] {
            let xj = UPoly::monomial(Const::one(), j);
            let dx = if j == 0 {
                UPoly::zero()
            } else {
                UPoly::monomial(Const::int(j as i64), j - 1)
            };
            let num = dx.mul(di).sub(&xj.mul(&di_prime));
            cols_u.push((offsets[i] + j, num.mul(&l_over_d2)));
        }
        for k in 0..m {
            let e = lam.get(i, k);
            if e.is_zero() || lens[k] == 0 {
                continue;
            }
            let f = l.div_exact(&e.denom().mul(&denoms[k])).mul(e.numer());
            for j in 0..lens[k] {
                cols_u.push((offsets[k] + j, f.shift(j).neg()));
            }
        }
        let mut cols_c: Vec<(usize, UPoly)> = Vec::new();
        for (jj, b) in rhs.iter().enumerate() {
            if b[i].is_zero() {
                continue;
            }
            let f = l.div_exact(b[i].denom()).mul(b[i].numer());
            cols_c.push((jj, f.neg()));
        }
        let maxdeg = cols_u
            .iter()
            .chain(cols_c.iter())
            .map(|(_, p)| p.deg())
            .max()
            .unwrap_or(-1);
        let base = rows_u.len();
        for _ in 0..=maxdeg {
            rows_u.push(BTreeMap::new());
            rows_c.push(BTreeMap::new());
        }
        for (col, p) in cols_u {
            for (s, v) in p.coeffs().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let e = rows_u[base + s].entry(col).or_insert_with(Const::zero);
                *e = e.add(v);
            }
        }
        for (col, p) in cols_c {
            for (s, v) in p.coeffs().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let e = rows_c[base + s].entry(col).or_insert_with(Const::zero);
                *e = e.add(v);
            }
        }
    }
    let keep: Vec<usize> = (0..rows_u.len())
        .filter(|&r| {
            rows_u[r].values().any(|v| !v.is_zero()) || rows_c[r].values().any(|v| !v.is_zero())
        })
        .collect();
    let lu = Matrix::from_fn(keep.len(), nu, |r, c| {
        rows_u[keep[r]].get(&c).cloned().unwrap_or_else(Const::zero)
    });
    let lc = Matrix::from_fn(keep.len(), t, |r, c| {
        rows_c[keep[r]].get(&c).cloned().unwrap_or_else(Const::zero)
    });
    Ok(Ansatz {
        denoms,
        offsets,
        lens,
        lu,
        lc,
    })
}

/// Residual `F' − Λ·F − Σ cⱼ·bⱼ`.
pub fn residual(
    lam: &Matrix<RatFunc>,
    rhs: &[Vec<RatFunc>],
    f: &[RatFunc],
    c: &[Const],
) -> Vec<RatFunc> {
    let lf = lam.mul_vec(f);
    (0..f.len())
        .map(|i| {
            let mut r = f[i].derivative().sub(&lf[i]);
            for (b, cj) in rhs.iter().zip(c) {
                if !cj.is_zero() {
                    r = r.sub(&b[i].scale(cj));
                }
            }
            r
        })
        .collect()
}

/// Whether `(F, c)` solves the system exactly.
pub fn verify(lam: &Matrix<RatFunc>, rhs: &[Vec<RatFunc>], sol: &RatSol) -> bool {
    residual(lam, rhs, &sol.f, &sol.c)
        .iter()
        .all(|v| v.is_zero())
}

/// Basis of all rational `(F, c)` with `F' = Λ·F + Σ cⱼ·bⱼ`.
pub fn rational_solutions_parametrized(
    lam: &Matrix<RatFunc>,
    rhs: &[Vec<RatFunc>],
) -> Result<RatSolSpace> {
    let a = ansatz(lam, rhs)?;
    let nu = a.unknowns();
    let t = rhs.len();
    let full = a.lu.hstack(&a.lc);
    let kernel = if full.rows() == 0 {
        Matrix::<Const>::identity(nu + t).to_rows()
    } else {
        full.kernel()
    };
    let mut basis = Vec::with_capacity(kernel.len());
    for v in kernel {
        let sol = RatSol {
            f: a.assemble(&v[..nu]),
            c: v[nu..].to_vec(),
        };
        if !verify(lam, rhs, &sol) {
            return Err(Error::CheckFailed(
                "rational solution failed plug-back".into(),
            ));
        }
        basis.push(sol);
    }
    Ok(RatSolSpace { basis })
}

/// Basis of the rational solutions of `Y' = A·Y`.
pub fn rational_solutions_homogeneous(a: &Matrix<RatFunc>) -> Result<RatSolSpace> {
    rational_solutions_parametrized(a, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_ratfunc, Field};

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
    fn constants_for_zero_matrix() {
        let s = rational_solutions_homogeneous(&mat(&[&["0", "0"], &["0", "0"]])).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn scalar_one_over_x() {
        let s = rational_solutions_homogeneous(&mat(&[&["1/x"]])).unwrap();
        assert_eq!(s.dim(), 1);
        let f = &s.basis[0].f[0];
        assert_eq!(f.div(&rf("x")).as_const().map(|c| !c.is_zero()), Some(true));
    }

    #[test]
    fn free_parameter_with_zero_rhs() {
        let s = rational_solutions_parametrized(&mat(&[&["0"]]), &[vec![rf("0")]]).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn no_solution_for_exponential() {
        let s = rational_solutions_homogeneous(&mat(&[&["1"]])).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn inhomogeneous_with_pole() {
        // F' = F/x + c·(1/x²): F = -1/(2x)·c + k·x
        let s = rational_solutions_parametrized(&mat(&[&["1/x"]]), &[vec![rf("1/x^2")]]).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn nilpotent_constant_system_has_polynomial_solutions() {
        let s = rational_solutions_homogeneous(&mat(&[&["0", "0"], &["1", "0"]])).unwrap();
        assert_eq!(s.dim(), 2);
    }
}
