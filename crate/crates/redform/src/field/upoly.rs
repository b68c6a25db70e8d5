use std::collections::BTreeMap;
use std::fmt;

use super::{Const, Differential, Field, Ring};

/// Dense univariate polynomial over [`Const`], coefficients ascending.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    c: Vec<Const>,
}

impl UPoly {
    pub fn new(mut c: Vec<Const>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&v| Const::int(v)).collect())
    }

    pub fn constant(v: Const) -> Self {
        UPoly::new(vec![v])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        UPoly::new(vec![Const::zero(), Const::one()])
    }

    /// `x - a`.
    pub fn linear(a: &Const) -> Self {
        UPoly::new(vec![a.neg(), Const::one()])
    }

    pub fn monomial(c: Const, k: usize) -> Self {
        let mut v = vec![Const::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Const] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Const {
        self.c.get(k).cloned().unwrap_or_else(Const::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg(&self) -> i64 {
        self.degree().map(|d| d as i64).unwrap_or(-1)
    }

    pub fn lc(&self) -> Const {
        self.c.last().cloned().unwrap_or_else(Const::zero)
    }

    pub fn is_const(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(|v| v.is_rational())
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for v in &self.c {
            for i in v.vars() {
                if !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn scale(&self, s: &Const) -> UPoly {
        if s.is_zero() {
            return UPoly::zero();
        }
        UPoly::new(self.c.iter().map(|v| v.mul(s)).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.c.is_empty() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn shift(&self, k: usize) -> UPoly {
        if self.c.is_empty() {
            return UPoly::zero();
        }
        let mut v = vec![Const::zero(); k];
        v.extend(self.c.iter().cloned());
        UPoly::new(v)
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Const::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let f = r[k].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for (i, dc) in d.c.iter().enumerate() {
                r[k - dd + i] = r[k - dd + i].sub(&f.mul(dc));
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let r = r0.rem(&r1);
            r0 = r1;
            r1 = r.monic();
        }
        r0.monic()
    }

    pub fn lcm(a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_zero() || b.is_zero() {
            return UPoly::zero();
        }
        a.mul(&b.div_exact(&UPoly::gcd(a, b))).monic()
    }

    pub fn eval(&self, x: &Const) -> Const {
        let mut acc = Const::zero();
        for v in self.c.iter().rev() {
            acc = acc.mul(x).add(v);
        }
        acc
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &Const) -> UPoly {
        let mut out = UPoly::zero();
        let xa = UPoly::new(vec![a.clone(), Const::one()]);
        for v in self.c.iter().rev() {
            out = out.mul(&xa).add(&UPoly::constant(v.clone()));
        }
        out
    }

    /// Order of vanishing at `x = a`, `None` for the zero polynomial.
    pub fn valuation_at(&self, a: &Const) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let s = self.taylor_shift(a);
        s.c.iter().position(|v| !v.is_zero())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Const) -> Const) -> UPoly {
        UPoly::new(self.c.iter().map(f).collect())
    }

    /// Substitutes parameters in every coefficient.
    pub fn substitute(&self, map: &BTreeMap<usize, Const>) -> Option<UPoly> {
        let mut out = Vec::with_capacity(self.c.len());
        for v in &self.c {
            out.push(v.substitute(map)?);
        }
        Some(UPoly::new(out))
    }

    pub fn fmt_var(&self, var: &str, names: &dyn Fn(usize) -> String) -> String {
        if self.c.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let cs = v.fmt_with(names);
            let needs_paren = !v.is_rational() && cs.contains([' ', '/']);
            let mon = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let term = if k == 0 {
                if needs_paren {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if v.is_one() {
                mon
            } else if *v == Const::int(-1) {
                format!("-{mon}")
            } else if needs_paren {
                format!("({cs})*{mon}")
            } else {
                format!("{cs}*{mon}")
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl Ring for UPoly {
    fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    fn one() -> Self {
        UPoly::constant(Const::one())
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.c.is_empty() || other.c.is_empty() {
            return UPoly::zero();
        }
        let mut r = vec![Const::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                r[i + j] = r[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(r)
    }

    fn neg(&self) -> Self {
        UPoly::new(self.c.iter().map(|v| v.neg()).collect())
    }

    fn from_int(n: i64) -> Self {
        UPoly::constant(Const::int(n))
    }

    fn weight(&self) -> usize {
        self.c.iter().map(|v| 1 + v.weight()).sum()
    }
}

impl Differential for UPoly {
    fn derivative(&self) -> Self {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, v)| v.mul(&Const::int(k as i64)))
                .collect(),
        )
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x", &|i| format!("t{}", i + 1)))
    }
}

impl_ops!(UPoly);
