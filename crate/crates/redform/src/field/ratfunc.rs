use std::collections::BTreeMap;
use std::fmt;

use super::{Const, Differential, Field, Ring, UPoly};

/// Rational function `num/den` in `x` with coprime parts and monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    /// Canonical `num/den`. Panics if `den` is zero.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_const() {
            let inv = den.lc().inv();
            return RatFunc {
                num: num.scale(&inv),
                den: UPoly::one(),
            };
        }
        let g = UPoly::gcd(&num, &den);
        let (n, d) = if g.is_const() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let inv = d.lc().inv();
        RatFunc {
            num: n.scale(&inv),
            den: d.scale(&inv),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: Const) -> Self {
        RatFunc::from_poly(UPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RatFunc::constant(Const::int(n))
    }

    pub fn x() -> Self {
        RatFunc::from_poly(UPoly::x())
    }

    /// `1/(x-a)^k`.
    pub fn pole(a: &Const, k: usize) -> Self {
        RatFunc::new(UPoly::one(), UPoly::linear(a).pow(k))
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_const()
    }

    pub fn is_const(&self) -> bool {
        self.den.is_const() && self.num.is_const()
    }

    pub fn as_const(&self) -> Option<Const> {
        if self.is_const() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational() && self.den.is_rational()
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut v = self.num.vars();
        for i in self.den.vars() {
            if !v.contains(&i) {
                v.push(i);
            }
        }
        v.sort_unstable();
        v
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.num.deg() - self.den.deg())
        }
    }

    /// Leading coefficient of the expansion at infinity.
    pub fn lc_infinity(&self) -> Const {
        self.num.lc().div(&self.den.lc())
    }

    /// Order at `x = a` (negative for poles); `None` for zero.
    pub fn valuation_at(&self, a: &Const) -> Option<i64> {
        let vn = self.num.valuation_at(a)? as i64;
        let vd = self.den.valuation_at(a).unwrap() as i64;
        Some(vn - vd)
    }

    /// Leading coefficient of the Laurent expansion at `x = a`.
    pub fn lc_at(&self, a: &Const) -> Const {
        if self.num.is_zero() {
            return Const::zero();
        }
        let n = self.num.taylor_shift(a);
        let d = self.den.taylor_shift(a);
        let first = |p: &UPoly| p.coeffs().iter().find(|v| !v.is_zero()).cloned().unwrap();
        first(&n).div(&first(&d))
    }

    /// Value at `x = a`, `None` at a pole.
    pub fn eval(&self, a: &Const) -> Option<Const> {
        let d = self.den.eval(a);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(a).div(&d))
        }
    }

    pub fn substitute(&self, map: &BTreeMap<usize, Const>) -> Option<RatFunc> {
        let n = self.num.substitute(map)?;
        let d = self.den.substitute(map)?;
        if d.is_zero() {
            return None;
        }
        Some(RatFunc::new(n, d))
    }

    pub fn scale(&self, c: &Const) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        self.fmt_in("x", names)
    }

    /// Formats with indeterminate `var` and parameter names from `names`.
    pub fn fmt_in(&self, var: &str, names: &dyn Fn(usize) -> String) -> String {
        let n = self.num.fmt_var(var, names);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.fmt_var(var, names);
        let simple = |p: &UPoly| {
            p.coeffs().iter().filter(|v| !v.is_zero()).count() == 1 && {
                let c = p.lc();
                c.is_one() || p.degree() == Some(0)
            }
        };
        let ns = if simple(&self.num) && !n.starts_with('-') {
            n
        } else {
            format!("({n})")
        };
        let ds = if simple(&self.den) && !d.contains('-') {
            d
        } else {
            format!("({d})")
        };
        format!("{ns}/{ds}")
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    fn one() -> Self {
        RatFunc::int(1)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return RatFunc::from_poly(self.num.add(&other.num));
            }
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::new(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        if other.den.is_one() {
            return RatFunc::new(self.num.add(&other.num.mul(&self.den)), self.den.clone());
        }
        let g = UPoly::gcd(&self.den, &other.den);
        let a = other.den.div_exact(&g);
        let b = self.den.div_exact(&g);
        let num = self.num.mul(&a).add(&other.num.mul(&b));
        RatFunc::new(num, self.den.mul(&a))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        if self.is_const() {
            return other.scale(&self.num.coeff(0));
        }
        if other.is_const() {
            return self.scale(&other.num.coeff(0));
        }
        let g1 = UPoly::gcd(&self.num, &other.den);
        let g2 = UPoly::gcd(&other.num, &self.den);
        let n = self.num.div_exact(&g1).mul(&other.num.div_exact(&g2));
        let d = self.den.div_exact(&g2).mul(&other.den.div_exact(&g1));
        let inv = d.lc().inv();
        RatFunc {
            num: n.scale(&inv),
            den: d.scale(&inv),
        }
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn from_int(n: i64) -> Self {
        RatFunc::int(n)
    }

    fn weight(&self) -> usize {
        self.num.weight() + self.den.weight()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl Differential for RatFunc {
    fn derivative(&self) -> Self {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFunc::new(n, self.den.mul(&self.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|i| format!("t{}", i + 1)))
    }
}

impl From<Const> for RatFunc {
    fn from(c: Const) -> Self {
        RatFunc::constant(c)
    }
}

impl From<UPoly> for RatFunc {
    fn from(p: UPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl_ops!(RatFunc);
impl_div!(RatFunc);
