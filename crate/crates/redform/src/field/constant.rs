use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::rational::fmt_q;
use super::{Field, MPoly, Ring, Q};

/// Element of the constant field: a rational, or a reduced fraction of
/// polynomials in the parameters `t0, t1, …`.
///
/// Canonical form: the fraction variant is only used when the value depends
/// on a parameter; numerator and denominator are coprime and the denominator
/// has grlex-leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Const {
    Rat(Q),
    Frac(Arc<Fraction>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fraction {
    num: MPoly,
    den: MPoly,
}

impl Const {
    pub fn rat(v: Q) -> Self {
        Const::Rat(v)
    }

    pub fn int(n: i64) -> Self {
        Const::Rat(Q::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Const::Rat(super::q(n, d))
    }

    /// The parameter `t_i` (0-based).
    pub fn param(i: usize) -> Self {
        Const::Frac(Arc::new(Fraction {
            num: MPoly::var(i),
            den: MPoly::one(),
        }))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Const::from_parts(p, MPoly::one())
    }

    /// Builds `num/den` in canonical form. Panics if `den` is zero.
    pub fn from_parts(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Const::Rat(Q::zero());
        }
        if let Some(d) = den.as_const() {
            if let Some(n) = num.as_const() {
                return Const::Rat(n / d);
            }
            return Const::Frac(Arc::new(Fraction {
                num: num.scale(&d.recip()),
                den: MPoly::one(),
            }));
        }
        let g = MPoly::gcd(&num, &den);
        let (mut n, mut d) = if g.is_const() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = d.leading().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        if let (Some(a), Some(b)) = (n.as_const(), d.as_const()) {
            return Const::Rat(a / b);
        }
        Const::Frac(Arc::new(Fraction { num: n, den: d }))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Const::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Const::Rat(v) => Some(v),
            Const::Frac(_) => None,
        }
    }

    pub fn numer(&self) -> MPoly {
        match self {
            Const::Rat(v) => MPoly::constant(v.clone()),
            Const::Frac(f) => f.num.clone(),
        }
    }

    pub fn denom(&self) -> MPoly {
        match self {
            Const::Rat(_) => MPoly::one(),
            Const::Frac(f) => f.den.clone(),
        }
    }

    pub fn vars(&self) -> Vec<usize> {
        match self {
            Const::Rat(_) => Vec::new(),
            Const::Frac(f) => {
                let mut v = f.num.vars();
                for x in f.den.vars() {
                    if !v.contains(&x) {
                        v.push(x);
                    }
                }
                v.sort_unstable();
                v
            }
        }
    }

    /// Substitutes constants for parameters. Returns `None` when the
    /// denominator vanishes under the substitution.
    pub fn substitute(&self, map: &BTreeMap<usize, Const>) -> Option<Const> {
        match self {
            Const::Rat(_) => Some(self.clone()),
            Const::Frac(f) => {
                let n = subst_poly(&f.num, map);
                let d = subst_poly(&f.den, map);
                if d.is_zero() {
                    None
                } else {
                    Some(n.div(&d))
                }
            }
        }
    }

    /// Value at a rational point, `None` if the denominator vanishes there.
    pub fn eval(&self, point: &BTreeMap<usize, Q>) -> Option<Q> {
        match self {
            Const::Rat(v) => Some(v.clone()),
            Const::Frac(f) => {
                let d = f.den.eval(point);
                if d.is_zero() {
                    None
                } else {
                    Some(f.num.eval(point) / d)
                }
            }
        }
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        match self {
            Const::Rat(v) => fmt_q(v),
            Const::Frac(f) => {
                let n = f.num.fmt_with(names);
                if f.den.is_const() {
                    return n;
                }
                let wrap = |s: String, p: &MPoly| {
                    if p.num_terms() > 1 {
                        format!("({s})")
                    } else {
                        s
                    }
                };
                format!(
                    "{}/{}",
                    wrap(n, &f.num),
                    wrap(f.den.fmt_with(names), &f.den)
                )
            }
        }
    }
}

fn subst_poly(p: &MPoly, map: &BTreeMap<usize, Const>) -> Const {
    let mut acc = Const::zero();
    for (m, c) in p.terms() {
        let mut t = Const::Rat(c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = map.get(&i).cloned().unwrap_or_else(|| Const::param(i));
            for _ in 0..e {
                t = t.mul(&base);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

fn parts(c: &Const) -> (MPoly, MPoly) {
    (c.numer(), c.denom())
}

impl Ring for Const {
    fn zero() -> Self {
        Const::Rat(Q::zero())
    }

    fn one() -> Self {
        Const::Rat(Q::one())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Const::Rat(v) if v.is_zero())
    }

    fn is_one(&self) -> bool {
        matches!(self, Const::Rat(v) if v.is_one())
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Const::Rat(a), Const::Rat(b)) => Const::Rat(a + b),
            _ => {
                let (a, b) = parts(self);
                let (c, d) = parts(other);
                if b == d {
                    Const::from_parts(a.add(&c), b)
                } else {
                    Const::from_parts(a.mul(&d).add(&c.mul(&b)), b.mul(&d))
                }
            }
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Const::Rat(a), Const::Rat(b)) => Const::Rat(a * b),
            (Const::Rat(a), Const::Frac(f)) | (Const::Frac(f), Const::Rat(a)) => {
                if a.is_zero() {
                    Const::zero()
                } else {
                    Const::Frac(Arc::new(Fraction {
                        num: f.num.scale(a),
                        den: f.den.clone(),
                    }))
                }
            }
            _ => {
                let (a, b) = parts(self);
                let (c, d) = parts(other);
                Const::from_parts(a.mul(&c), b.mul(&d))
            }
        }
    }

    fn neg(&self) -> Self {
        match self {
            Const::Rat(a) => Const::Rat(-a),
            Const::Frac(f) => Const::Frac(Arc::new(Fraction {
                num: f.num.neg(),
                den: f.den.clone(),
            })),
        }
    }

    fn from_int(n: i64) -> Self {
        Const::int(n)
    }

    fn weight(&self) -> usize {
        match self {
            Const::Rat(v) => v.weight(),
            Const::Frac(f) => 1000 * (f.num.num_terms() + f.den.num_terms()),
        }
    }
}

impl Field for Const {
    fn inv(&self) -> Self {
        match self {
            Const::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Const::Rat(a.recip())
            }
            Const::Frac(f) => Const::from_parts(f.den.clone(), f.num.clone()),
        }
    }
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|i| format!("t{}", i + 1)))
    }
}

impl From<Q> for Const {
    fn from(v: Q) -> Self {
        Const::Rat(v)
    }
}

impl From<i64> for Const {
    fn from(n: i64) -> Self {
        Const::int(n)
    }
}

impl_ops!(Const);
impl_div!(Const);
