use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::denom_lcm;
use super::{Differential, Ring, UPoly, Q};
use crate::{Error, Result};

/// Squarefree factors with multiplicities and the distinct rational roots.
#[derive(Clone, Debug, PartialEq)]
pub struct Squarefree {
    pub factors: Vec<(UPoly, usize)>,
    pub roots: Vec<Q>,
}

fn rational_coeffs(p: &UPoly) -> Result<Vec<Q>> {
    p.coeffs()
        .iter()
        .map(|c| {
            c.as_rational()
                .cloned()
                .ok_or_else(|| Error::ParametricUnsupported(format!("polynomial {p}")))
        })
        .collect()
}

/// Yun's squarefree decomposition of a monic-normalized `p`.
pub fn squarefree(p: &UPoly) -> Vec<(UPoly, usize)> {
    let p = p.monic();
    if p.is_const() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let dp = p.derivative();
    let a0 = UPoly::gcd(&p, &dp);
    let mut b = p.div_exact(&a0);
    let mut c = dp.div_exact(&a0);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_const() {
        let a = UPoly::gcd(&b, &d);
        if !a.is_const() {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a);
        c = d.div_exact(&a);
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut f = BigInt::from(2);
    let limit = BigInt::from(1_000_000u32);
    while &f * &f <= n && f < limit {
        let mut e = 0;
        while (&n % &f).is_zero() {
            n /= &f;
            e += 1;
        }
        if e > 0 {
            primes.push((f.clone(), e));
        }
        f += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

/// Distinct rational roots of a polynomial with rational coefficients.
pub fn rational_roots(p: &UPoly) -> Result<Vec<Q>> {
    let mut cs = rational_coeffs(p)?;
    if cs.is_empty() {
        return Err(Error::Contract("roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let lead_zeros = cs.iter().position(|c| !Zero::is_zero(c)).unwrap();
    if lead_zeros > 0 {
        roots.push(<Q as Zero>::zero());
        cs.drain(..lead_zeros);
    }
    if cs.len() == 1 {
        return Ok(roots);
    }
    let l = denom_lcm(cs.iter());
    let ints: Vec<BigInt> = cs
        .iter()
        .map(|c| (c * Q::from(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
    let eval = |r: &Q| {
        let mut acc = <Q as Zero>::zero();
        for c in ints.iter().rev() {
            acc = acc * r + Q::from(c.clone());
        }
        acc
    };
    let num_divs = divisors(&ints[0]);
    let den_divs = divisors(ints.last().unwrap());
    let mut cands: Vec<Q> = Vec::new();
    for a in &num_divs {
        for b in &den_divs {
            let r = Q::new(a.clone(), b.clone());
            for s in [r.clone(), -r] {
                if !cands.contains(&s) {
                    cands.push(s);
                }
            }
        }
    }
    for r in cands {
        if Zero::is_zero(&eval(&r)) {
            roots.push(r);
        }
    }
    roots.sort();
    Ok(roots)
}

/// Squarefree decomposition plus rational roots.
pub fn squarefree_and_rational_roots(p: &UPoly) -> Result<Squarefree> {
    if p.is_zero() {
        return Err(Error::Contract("zero polynomial".into()));
    }
    rational_coeffs(p)?;
    let factors = squarefree(p);
    let mut roots = Vec::new();
    for (f, _) in &factors {
        roots.extend(rational_roots(f)?);
    }
    roots.sort();
    Ok(Squarefree { factors, roots })
}

/// Splits `p` into linear factors over Q: returns `(root, multiplicity)`.
/// Fails if some factor has no rational root.
pub fn split_rational(p: &UPoly) -> Result<Vec<(Q, usize)>> {
    rational_coeffs(p)?;
    let mut out = Vec::new();
    for (f, m) in squarefree(p) {
        let roots = rational_roots(&f)?;
        if roots.len() != f.deg() as usize {
            return Err(Error::AlgebraicExtensionRequired(format!(
                "factor {f} has irrational roots"
            )));
        }
        out.extend(roots.into_iter().map(|r| (r, m)));
    }
    out.sort();
    Ok(out)
}

/// Largest integer root of `p`, if any.
pub fn max_integer_root(p: &UPoly) -> Result<Option<BigInt>> {
    if p.is_const() {
        return Ok(None);
    }
    Ok(rational_roots(p)?
        .into_iter()
        .filter(|r| r.is_integer())
        .map(|r| r.to_integer())
        .max())
}

#[cfg(test)]
fn check_monic_product(p: &UPoly, factors: &[(UPoly, usize)]) -> bool {
    let mut acc = UPoly::one();
    for (f, m) in factors {
        acc = acc.mul(&f.pow(*m));
    }
    acc == p.monic() || (p.is_const() && factors.is_empty())
}
