use crate::field::{split_rational, Const, Field, RatFunc, Ring, UPoly};
use crate::Result;

/// Result of integrating a rational function.
#[derive(Clone, Debug, PartialEq)]
pub struct Antiderivative {
    /// `g` with `g' = f`, present when every residue vanishes.
    pub integral: Option<RatFunc>,
    /// `g` with `f = g' + Σ r/(x - a)`.
    pub rational_part: RatFunc,
    /// Nonzero residues keyed by pole.
    pub residues: Vec<(Const, Const)>,
}

/// First `n` Taylor coefficients of `num/den` at `y = 0`; `den(0) ≠ 0`.
fn series_div(num: &UPoly, den: &UPoly, n: usize) -> Vec<Const> {
    let d0inv = den.coeff(0).inv();
    let mut out: Vec<Const> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for (j, o) in out.iter().enumerate() {
            let dk = den.coeff(k - j);
            if !dk.is_zero() {
                acc = acc.sub(&o.mul(&dk));
            }
        }
        out.push(acc.mul(&d0inv));
    }
    out
}

/// Coefficients of `(x-a)^{-m}, …, (x-a)^{-1}` in the Laurent expansion of `f`
/// at a pole `a` of order at most `m`.
pub fn principal_part(f: &RatFunc, a: &Const, m: usize) -> Vec<Const> {
    let lin = UPoly::linear(a).pow(m);
    let (cof, r) = f.denom().divrem(&lin);
    debug_assert!(r.is_zero());
    let n = f.numer().taylor_shift(a);
    let c = cof.taylor_shift(a);
    series_div(&n, &c, m)
}

/// Integrates `f`. Poles must be rational; numerators may carry parameters.
pub fn rational_antiderivative(f: &RatFunc) -> Result<Antiderivative> {
    let poles = split_rational(f.denom())?;
    let (q, _) = f.numer().divrem(f.denom());
    let mut g = RatFunc::from_poly(UPoly::new(
        std::iter::once(Const::zero())
            .chain(
                q.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.div(&Const::int(k as i64 + 1))),
            )
            .collect(),
    ));
    let mut residues = Vec::new();
    for (a, m) in poles {
        let a = Const::rat(a);
        let pp = principal_part(f, &a, m);
        for (idx, c) in pp.iter().enumerate() {
            let k = m - idx;
            if c.is_zero() {
                continue;
            }
            if k == 1 {
                residues.push((a.clone(), c.clone()));
            } else {
                let e = 1 - k as i64;
                let term = RatFunc::pole(&a, k - 1).scale(&c.div(&Const::int(e)));
                g = g.add(&term);
            }
        }
    }
    let integral = if residues.is_empty() {
        Some(g.clone())
    } else {
        None
    };
    Ok(Antiderivative {
        integral,
        rational_part: g,
        residues,
    })
}
