use std::collections::{BTreeMap, BTreeSet};

use crate::field::{Const, MPoly, Ring, Q};
use crate::{Error, Result};

/// One piece of the constraint variety on the parameters: fixed values,
/// residual equations and inequations, all over `Q`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Component {
    /// Parameters eliminated by substitution; values involve only free parameters.
    pub fixed: BTreeMap<usize, Const>,
    /// Monic polynomials in the free parameters that vanish on the component.
    pub equations: Vec<MPoly>,
    /// Monic polynomials in the free parameters that do not vanish on the component.
    pub inequations: Vec<MPoly>,
}

fn push_unique(v: &mut Vec<MPoly>, p: MPoly) {
    let p = p.monic();
    if !v.contains(&p) {
        v.push(p);
    }
}

impl Component {
    pub fn free() -> Self {
        Component::default()
    }

    /// Applies the fixed values to a constant.
    pub fn apply(&self, c: &Const) -> Option<Const> {
        if self.fixed.is_empty() {
            return Some(c.clone());
        }
        c.substitute(&self.fixed)
    }

    /// Numerator of `p` after substituting the fixed values.
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        if self.fixed.is_empty() {
            return p.clone();
        }
        Const::from_poly(p.clone())
            .substitute(&self.fixed)
            .expect("polynomials have no denominator")
            .numer()
    }

    /// Whether `p` vanishes identically on the component.
    pub fn is_zero_on(&self, p: &MPoly) -> bool {
        let r = self.reduce(p);
        r.is_zero() || self.equations.iter().any(|e| r.div_exact(e).is_some())
    }

    /// Whether `p` is known not to vanish anywhere on the component.
    pub fn is_nonzero_on(&self, p: &MPoly) -> bool {
        let mut r = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        let mut progress = true;
        while progress && !r.is_const() {
            progress = false;
            for q in &self.inequations {
                if let Some(d) = r.div_exact(q) {
                    r = d;
                    progress = true;
                }
            }
        }
        r.is_const()
    }

    /// Sets parameter `v` to `value`. `None` when the result is inconsistent.
    pub fn fix(&self, v: usize, value: Const) -> Option<Component> {
        let map: BTreeMap<usize, Const> = [(v, value.clone())].into();
        let mut fixed = BTreeMap::new();
        for (k, c) in &self.fixed {
            fixed.insert(*k, c.substitute(&map)?);
        }
        fixed.insert(v, value.clone());
        let one = |p: &MPoly| {
            Const::from_poly(p.clone())
                .substitute(&map)
                .expect("polynomials have no denominator")
                .numer()
        };
        let mut equations = Vec::new();
        for e in &self.equations {
            let r = one(e);
            if r.is_zero() {
                continue;
            }
            if r.is_const() {
                return None;
            }
            push_unique(&mut equations, r);
        }
        let mut inequations = Vec::new();
        let den = value.denom();
        let extra = (!den.is_const()).then_some(den);
        for q in self.inequations.iter().cloned().chain(extra) {
            let r = one(&q);
            if r.is_zero() {
                return None;
            }
            if !r.is_const() {
                push_unique(&mut inequations, r);
            }
        }
        Some(Component {
            fixed,
            equations,
            inequations,
        })
    }

    /// Adds `p ≠ 0`.
    pub fn add_inequation(&self, p: &MPoly) -> Option<Component> {
        let r = self.reduce(p);
        if self.is_zero_on(&r) {
            return None;
        }
        let mut c = self.clone();
        if !r.is_const() {
            push_unique(&mut c.inequations, r);
        }
        Some(c)
    }

    /// Adds `p = 0`, splitting into components when `p` factors through a monomial.
    pub fn add_equation(&self, p: &MPoly) -> Vec<Component> {
        let r = self.reduce(p);
        if r.is_zero() {
            return vec![self.clone()];
        }
        if r.is_const() {
            return Vec::new();
        }
        let mut out: Vec<Component> = Vec::new();
        let mono = r.monomial_content();
        if !mono.is_one() {
            for (v, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    if let Some(c) = self.fix(v, Const::zero()) {
                        out.push(c);
                    }
                }
            }
            let q = r.div_mono(&mono);
            if !q.is_const() {
                out.extend(self.add_equation(&q));
            }
            dedup(&mut out);
            return out;
        }
        let vars = r.vars();
        if let Some((v, (a, b))) = vars
            .iter()
            .rev()
            .find_map(|&v| r.linear_in(v).map(|l| (v, l)))
        {
            let value = Const::from_poly(b.scale(&(-Q::one() / a)));
            return self.fix(v, value).into_iter().collect();
        }
        let mut c = self.clone();
        push_unique(&mut c.equations, r);
        if c.inequations.iter().any(|q| c.is_zero_on(q)) {
            return Vec::new();
        }
        vec![c]
    }

    /// Every parameter index mentioned by the component.
    pub fn vars(&self) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = self.fixed.keys().copied().collect();
        for c in self.fixed.values() {
            s.extend(c.vars());
        }
        for p in self.equations.iter().chain(&self.inequations) {
            s.extend(p.vars());
        }
        s
    }

    /// Renumbers parameter `i` as `i + off`.
    pub fn shifted(&self, off: usize) -> Component {
        let map = shift_map(&self.vars(), off);
        let sh = |p: &MPoly| p.substitute(&map);
        Component {
            fixed: self
                .fixed
                .iter()
                .map(|(k, c)| (k + off, shift_const(c, off)))
                .collect(),
            equations: self.equations.iter().map(sh).collect(),
            inequations: self.inequations.iter().map(sh).collect(),
        }
    }

    /// Intersection with a component over disjoint parameters.
    pub fn merge(&self, o: &Component) -> Component {
        let mut c = self.clone();
        c.fixed.extend(o.fixed.iter().map(|(k, v)| (*k, v.clone())));
        for p in &o.equations {
            push_unique(&mut c.equations, p.clone());
        }
        for p in &o.inequations {
            push_unique(&mut c.inequations, p.clone());
        }
        c
    }

    /// Checks a full rational point against the component.
    pub fn contains_point(&self, point: &BTreeMap<usize, Q>) -> bool {
        for (k, c) in &self.fixed {
            match (c.eval(point), point.get(k)) {
                (Some(v), Some(p)) if &v == p => {}
                _ => return false,
            }
        }
        self.equations.iter().all(|e| e.eval(point).is_zero())
            && self.inequations.iter().all(|q| !q.eval(point).is_zero())
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> Vec<String> {
        let mut out: Vec<String> = self
            .fixed
            .iter()
            .map(|(k, c)| format!("{} = {}", names(*k), c.fmt_with(names)))
            .collect();
        out.extend(
            self.equations
                .iter()
                .map(|e| format!("{} = 0", e.fmt_with(names))),
        );
        out.extend(
            self.inequations
                .iter()
                .map(|e| format!("{} != 0", e.fmt_with(names))),
        );
        out
    }
}

fn shift_map(vars: &BTreeSet<usize>, off: usize) -> BTreeMap<usize, MPoly> {
    vars.iter().map(|&v| (v, MPoly::var(v + off))).collect()
}

pub(crate) fn shift_const(c: &Const, off: usize) -> Const {
    if off == 0 || c.is_rational() {
        return c.clone();
    }
    let map: BTreeMap<usize, Const> = c
        .vars()
        .iter()
        .map(|&v| (v, Const::param(v + off)))
        .collect();
    c.substitute(&map)
        .expect("renaming keeps denominators nonzero")
}

pub(crate) fn dedup(v: &mut Vec<Component>) {
    let mut out: Vec<Component> = Vec::new();
    for c in v.drain(..) {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    *v = out;
}

/// Parameter names together with the components explored for them.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ParamLedger {
    pub names: Vec<String>,
    /// The chosen component comes first.
    pub components: Vec<Component>,
}

impl ParamLedger {
    pub fn fresh(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }

    pub fn name(&self, i: usize) -> String {
        self.names
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("t{}", i + 1))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn chosen(&self) -> Option<&Component> {
        self.components.first()
    }
}

/// Values tried for each free parameter, in order.
pub fn search_values() -> Vec<Q> {
    let mut v = vec![Q::zero()];
    for k in 1..=3i64 {
        if k > 1 {
            v.push(Q::new(1.into(), k.into()));
            v.push(Q::new((-1).into(), k.into()));
        }
        v.push(Q::from_integer(k.into()));
        v.push(Q::from_integer((-k).into()));
    }
    v
}

const LEAF_BUDGET: usize = 20_000;

/// Finds a rational point of `comp` for the parameters in `vars` accepted by `valid`.
/// The returned map also holds the values of the fixed parameters.
pub fn pick_point(
    comp: &Component,
    vars: &BTreeSet<usize>,
    valid: &dyn Fn(&BTreeMap<usize, Q>) -> bool,
) -> Result<BTreeMap<usize, Q>> {
    let mut all = vars.clone();
    all.extend(comp.vars());
    let free: Vec<usize> = all
        .iter()
        .copied()
        .filter(|v| !comp.fixed.contains_key(v))
        .collect();
    let vals = search_values();
    let mut point = BTreeMap::new();
    let mut leaves = 0;
    if search(comp, &free, 0, &vals, &mut point, valid, &mut leaves) {
        Ok(point)
    } else {
        Err(Error::NoRationalPointFound)
    }
}

fn partial_ok(comp: &Component, point: &BTreeMap<usize, Q>, just: usize) -> bool {
    let ready = |p: &MPoly| {
        let vs = p.vars();
        vs.contains(&just) && vs.iter().all(|v| point.contains_key(v))
    };
    comp.equations
        .iter()
        .filter(|e| ready(e))
        .all(|e| e.eval(point).is_zero())
        && comp
            .inequations
            .iter()
            .filter(|q| ready(q))
            .all(|q| !q.eval(point).is_zero())
}

fn search(
    comp: &Component,
    free: &[usize],
    i: usize,
    vals: &[Q],
    point: &mut BTreeMap<usize, Q>,
    valid: &dyn Fn(&BTreeMap<usize, Q>) -> bool,
    leaves: &mut usize,
) -> bool {
    if i == free.len() {
        *leaves += 1;
        let mut full = point.clone();
        for (k, c) in &comp.fixed {
            match c.eval(point) {
                Some(v) => full.insert(*k, v),
                None => return false,
            };
        }
        if comp.contains_point(&full) && valid(&full) {
            *point = full;
            return true;
        }
        return false;
    }
    for v in vals {
        if *leaves >= LEAF_BUDGET {
            return false;
        }
        point.insert(free[i], v.clone());
        if partial_ok(comp, point, free[i]) && search(comp, free, i + 1, vals, point, valid, leaves)
        {
            return true;
        }
    }
    point.remove(&free[i]);
    false
}
