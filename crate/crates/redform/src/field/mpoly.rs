use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::fmt_q;
use super::Q;

/// Exponent vector with trailing zeros trimmed. Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Mono(e)
    }

    pub fn from_exps(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Mono(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Mono) -> Mono {
        let n = self.0.len().max(other.0.len());
        let e = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Mono::from_exps(e)
    }

    fn div(&self, other: &Mono) -> Option<Mono> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            let (a, b) = (self.exp(i), other.exp(i));
            if b > a {
                return None;
            }
            e.push(a - b);
        }
        Some(Mono::from_exps(e))
    }

    fn with_exp(&self, i: usize, k: u32) -> Mono {
        let mut e = self.0.clone();
        if e.len() <= i {
            e.resize(i + 1, 0);
        }
        e[i] = k;
        Mono::from_exps(e)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℚ in parameters `t0, t1, …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Q>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(i), Q::one());
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_const(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_const(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_const() {
            self.terms.get(&Mono::one()).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    /// Indices of variables that occur.
    pub fn vars(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| {
                if m.is_one() {
                    None
                } else {
                    Some(m.exps().len() - 1)
                }
            })
            .max()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> MPoly {
        if s.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    fn mul_term(&self, m: &Mono, c: &Q) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m1, c1)| (m1.mul(m), c1 * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient, or `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &MPoly) -> Option<MPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if let Some(c) = other.as_const() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = other.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quo = MPoly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem = rem.sub(&other.mul_term(&qm, &qc));
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Scale so the grlex-leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Coefficients with respect to variable `v`, indexed by degree in `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            out[k].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: usize, cs: &[MPoly]) -> MPoly {
        let mut r = MPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            for (m, a) in &c.terms {
                r.add_term(m.with_exp(v, m.exp(v) + k as u32), a.clone());
            }
        }
        r
    }

    /// Evaluate at a full rational point; missing variables count as 0.
    pub fn eval(&self, point: &BTreeMap<usize, Q>) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let v = point.get(&i).cloned().unwrap_or_else(Q::zero);
                    t *= num_traits::pow(v, e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute polynomials for some variables.
    pub fn substitute(&self, map: &BTreeMap<usize, MPoly>) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if let Some(p) = map.get(&i) {
                    if e > 0 {
                        t = t.mul(&p.pow(e));
                    }
                }
            }
            let keep: Vec<u32> = m
                .exps()
                .iter()
                .enumerate()
                .map(|(i, &e)| if map.contains_key(&i) { 0 } else { e })
                .collect();
            r = r.add(&t.mul_term(&Mono::from_exps(keep), &Q::one()));
        }
        r
    }

    /// If the polynomial has degree 1 in `v` with a constant coefficient,
    /// returns `(a, b)` with `self = a·v + b`.
    pub fn linear_in(&self, v: usize) -> Option<(Q, MPoly)> {
        if self.degree_in(v) != 1 {
            return None;
        }
        let cs = self.coeffs_in(v);
        let a = cs[1].as_const()?;
        Some((a, cs[0].clone()))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.exps().to_vec(),
            None => return Mono::one(),
        };
        let mut e = first;
        for m in it {
            for (i, x) in e.iter_mut().enumerate() {
                *x = (*x).min(m.exp(i));
            }
        }
        Mono::from_exps(e)
    }

    pub fn div_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.div(m).expect("monomial divides"), c.clone()))
                .collect(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_const() || b.is_const() {
            return MPoly::one();
        }
        let va = a.max_var().unwrap_or(0);
        let vb = b.max_var().unwrap_or(0);
        let v = va.max(vb);
        let ca = a.coeffs_in(v);
        let cb = b.coeffs_in(v);
        if ca.len() == 1 {
            return MPoly::gcd(a, &content(&cb));
        }
        if cb.len() == 1 {
            return MPoly::gcd(&content(&ca), b);
        }
        let cont_a = content(&ca);
        let cont_b = content(&cb);
        let g_cont = MPoly::gcd(&cont_a, &cont_b);
        let pa = prim(&ca, &cont_a);
        let pb = prim(&cb, &cont_b);
        let g = if pa.iter().chain(pb.iter()).all(|c| c.is_const()) {
            univariate_gcd(pa, pb)
        } else {
            prs_gcd(pa, pb)
        };
        MPoly::from_coeffs_in(v, &g).mul(&g_cont).monic()
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{}", names(i), e)),
                }
            }
            if factors.is_empty() {
                out.push_str(&fmt_q(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_q(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

fn content(cs: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in cs {
        g = MPoly::gcd(&g, c);
        if g.is_const() && !g.is_zero() {
            return MPoly::one();
        }
    }
    g
}

fn prim(cs: &[MPoly], cont: &MPoly) -> Vec<MPoly> {
    cs.iter()
        .map(|c| c.div_exact(cont).expect("content divides coefficients"))
        .collect()
}

fn trim(mut v: Vec<MPoly>) -> Vec<MPoly> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn univariate_gcd(a: Vec<MPoly>, b: Vec<MPoly>) -> Vec<MPoly> {
    let to_q = |v: Vec<MPoly>| -> Vec<Q> { v.iter().map(|c| c.as_const().unwrap()).collect() };
    let mut r0 = to_q(a);
    let mut r1 = to_q(b);
    while r1.iter().any(|c| !c.is_zero()) {
        let r = qpoly_rem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    while r0.last().is_some_and(|c| c.is_zero()) {
        r0.pop();
    }
    let lc = r0.last().cloned().unwrap_or_else(Q::one);
    r0.iter().map(|c| MPoly::constant(c / &lc)).collect()
}

fn qpoly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut b = b.to_vec();
    while b.last().is_some_and(|c| c.is_zero()) {
        b.pop();
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = b[db].clone();
    loop {
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.len() < b.len() {
            return r;
        }
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lc;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &f * bc;
        }
        r.pop();
    }
}

fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = trim(a.to_vec());
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        let mut next: Vec<MPoly> = r.iter().map(|c| c.mul(&lc)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
        }
        next.pop();
        r = trim(next);
        if r.is_empty() {
            r.push(MPoly::zero());
        }
    }
    r
}

fn prs_gcd(a: Vec<MPoly>, b: Vec<MPoly>) -> Vec<MPoly> {
    let (mut r0, mut r1) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = prem(&r0, &r1);
        if r.iter().all(|c| c.is_zero()) {
            let c = content(&r1);
            return prim(&r1, &c);
        }
        if r.len() == 1 {
            return vec![MPoly::one()];
        }
        let c = content(&r);
        r0 = r1;
        r1 = prim(&r, &c);
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|i| format!("t{}", i + 1)))
    }
}
