use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::ledger::{pick_point, Component, ParamLedger};
use super::rank::rank_minimize;
use crate::adjoint::{
    build_isotypical_flag, build_psi_blocks, isotypical_decomposition_seeded, unvec_block,
    vec_block, IsotypicalFlag,
};
use crate::diffsys::{gauge_transform, DiffSystem, GaugeMatrix};
use crate::field::{in_span, Const, Differential, Matrix, RatFunc, Ring, Q};
use crate::lie::{lie_of_matrix, LieBasis};
use crate::ratsol::ansatz;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOptions {
    /// Largest number of parameter components kept alive at once.
    pub component_cap: usize,
    /// Seed for the module splitting search.
    pub seed: u64,
    /// Reduce isotypical blocks on separate threads.
    pub parallel: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            component_cap: 64,
            seed: 0,
            parallel: false,
        }
    }
}

/// What happened at one level of one isotypical flag on the chosen path.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelReport {
    pub block: usize,
    /// `k` for the level `W^[k]`.
    pub level: usize,
    pub piece_dim: usize,
    pub copies: usize,
    /// Rank of the solvability conditions on the component.
    pub rank: usize,
    /// Number of minimal-rank components found at this level.
    pub components: usize,
    /// Combinations of copies that were eliminated.
    pub directions: Vec<Vec<Const>>,
    /// General rational solution used for each direction.
    pub solutions: Vec<Vec<RatFunc>>,
}

impl LevelReport {
    pub fn removed(&self) -> usize {
        self.directions.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockReport {
    pub dim: usize,
    pub multiplicity: usize,
    pub level_dims: Vec<usize>,
    /// Nonzero residue coordinates left in the block, for every explored component.
    pub residues: Vec<usize>,
    pub chosen: usize,
}

impl BlockReport {
    /// Whether explored components ended with different residue sizes.
    pub fn disagreement(&self) -> bool {
        self.residues.iter().any(|&r| r != self.residues[0])
    }
}

/// Reduction of one two-block cut, kept parametric.
#[derive(Clone, Debug, PartialEq)]
pub struct CutReduction {
    /// Row and column of the cut's top-left corner in the whole system.
    pub offset: usize,
    pub n1: usize,
    pub n2: usize,
    /// Lower-left block `B(t)` of the gauge `Id + B(t)`.
    pub gauge_sub: Matrix<RatFunc>,
    /// Lower-left block of the reduced system before a point is chosen.
    pub reduced_sub: Matrix<RatFunc>,
    pub ledger: ParamLedger,
    pub point: BTreeMap<usize, Q>,
    pub blocks: Vec<BlockReport>,
    pub levels: Vec<LevelReport>,
}

impl CutReduction {
    /// `(B(t₀), S_red(t₀))` at another point of the chosen component.
    pub fn specialize(
        &self,
        point: &BTreeMap<usize, Q>,
    ) -> Result<(Matrix<RatFunc>, Matrix<RatFunc>)> {
        let comp = self.ledger.chosen().cloned().unwrap_or_default();
        let mut full = point.clone();
        for (k, c) in &comp.fixed {
            let v = c.eval(point).ok_or(Error::NoRationalPointFound)?;
            full.insert(*k, v);
        }
        if !comp.contains_point(&full) {
            return Err(Error::Contract(
                "point is not on the chosen component".into(),
            ));
        }
        let map = const_map(&full);
        let ev = |m: &Matrix<RatFunc>| {
            m.try_map(|v| eval_at(v, &map))
                .ok_or(Error::NoRationalPointFound)
        };
        Ok((ev(&self.gauge_sub)?, ev(&self.reduced_sub)?))
    }
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub p: GaugeMatrix,
    pub a_red: DiffSystem,
    pub lie_basis: LieBasis,
    pub ledger: ParamLedger,
    pub point: BTreeMap<usize, Q>,
    pub cuts: Vec<CutReduction>,
}

fn const_map(p: &BTreeMap<usize, Q>) -> BTreeMap<usize, Const> {
    p.iter().map(|(k, v)| (*k, Const::rat(v.clone()))).collect()
}

fn eval_at(v: &RatFunc, map: &BTreeMap<usize, Const>) -> Option<RatFunc> {
    if v.is_rational() {
        return Some(v.clone());
    }
    let r = v.substitute(map)?;
    r.is_rational().then_some(r)
}

fn subst(comp: &Component, v: &RatFunc) -> Result<RatFunc> {
    if comp.fixed.is_empty() || v.is_rational() {
        return Ok(v.clone());
    }
    v.substitute(&comp.fixed)
        .ok_or_else(|| Error::CheckFailed("parameter substitution hit a zero denominator".into()))
}

fn shift_rf(v: &RatFunc, off: usize) -> RatFunc {
    if off == 0 || v.is_rational() {
        return v.clone();
    }
    let map: BTreeMap<usize, Const> = v
        .vars()
        .iter()
        .map(|&i| (i, Const::param(i + off)))
        .collect();
    v.substitute(&map)
        .expect("renaming keeps denominators nonzero")
}

fn add_into(acc: &mut [RatFunc], v: &[RatFunc]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = a.add(b);
        }
    }
}

#[derive(Clone, Debug)]
struct BlockState {
    comp: Component,
    b: Vec<RatFunc>,
    s: Vec<RatFunc>,
    reports: Vec<LevelReport>,
}

struct BlockOutcome {
    names: Vec<String>,
    states: Vec<BlockState>,
    chosen: usize,
    residues: Vec<usize>,
}

struct BlockJob<'a> {
    index: usize,
    flag: &'a IsotypicalFlag,
    starts: Vec<usize>,
    tinv: &'a Matrix<Const>,
    psi: &'a Matrix<RatFunc>,
    cap: usize,
}

impl BlockJob<'_> {
    fn coords(&self, start: usize, len: usize, s: &[RatFunc]) -> Vec<RatFunc> {
        (start..start + len)
            .map(|r| {
                let mut acc = RatFunc::zero();
                for (c, v) in self.tinv.row(r).iter().zip(s) {
                    if !c.is_zero() && !v.is_zero() {
                        acc = acc.add(&v.scale(c));
                    }
                }
                acc
            })
            .collect()
    }

    fn level_coords(&self, k: usize, s: &[RatFunc]) -> Vec<Vec<RatFunc>> {
        let lv = &self.flag.levels[k];
        let d = lv.piece_dim();
        (0..lv.copies())
            .map(|j| self.coords(self.starts[k] + j * d, d, s))
            .collect()
    }

    fn run(&self, s0: &[RatFunc]) -> Result<BlockOutcome> {
        let mut names = Vec::new();
        let mut states = vec![BlockState {
            comp: Component::free(),
            b: vec![RatFunc::zero(); s0.len()],
            s: s0.to_vec(),
            reports: Vec::new(),
        }];
        for k in (0..self.flag.depth()).rev() {
            let mut next = Vec::new();
            for st in states {
                next.extend(self.reduce_level(st, k, &mut names)?);
                if next.len() > self.cap {
                    return Err(Error::ComponentExplosion(self.cap));
                }
            }
            states = next;
        }
        let residues: Vec<usize> = states
            .iter()
            .map(|st| {
                (0..self.flag.depth())
                    .flat_map(|k| self.level_coords(k, &st.s).into_iter().flatten())
                    .filter(|v| !v.is_zero())
                    .count()
            })
            .collect();
        let best = residues.iter().copied().min().unwrap_or(0);
        let chosen = residues.iter().position(|&r| r == best).unwrap_or(0);
        Ok(BlockOutcome {
            names,
            states,
            chosen,
            residues,
        })
    }

    fn reduce_level(
        &self,
        st: BlockState,
        k: usize,
        names: &mut Vec<String>,
    ) -> Result<Vec<BlockState>> {
        let lv = &self.flag.levels[k];
        let d = lv.piece_dim();
        let nu = lv.copies();
        let a = self.level_coords(k, &st.s);
        let lam = lv.lambda.neg();
        let rhs: Vec<Vec<RatFunc>> = a
            .iter()
            .map(|aj| aj.iter().map(|v| v.neg()).collect())
            .collect();
        let ans = ansatz(&lam, &rhs)?;
        let m = ans.conditions();
        let comps = rank_minimize(&m, &st.comp, self.cap)?;
        let ncomp = comps.len();
        let mut out = Vec::with_capacity(ncomp);
        for rc in comps {
            let comp = rc.component;
            let mut b =
                st.b.iter()
                    .map(|v| subst(&comp, v))
                    .collect::<Result<Vec<_>>>()?;
            let mut s =
                st.s.iter()
                    .map(|v| subst(&comp, v))
                    .collect::<Result<Vec<_>>>()?;
            let msub = m.try_map(|c| comp.apply(c)).ok_or_else(|| {
                Error::CheckFailed("condition matrix undefined on component".into())
            })?;
            let ker = if msub.rows() == 0 {
                Matrix::<Const>::identity(nu).to_rows()
            } else {
                msub.kernel()
            };
            let mut report = LevelReport {
                block: self.index,
                level: k + 1,
                piece_dim: d,
                copies: nu,
                rank: rc.rank,
                components: ncomp,
                directions: ker.clone(),
                solutions: Vec::new(),
            };
            if ker.is_empty() {
                let mut reports = st.reports.clone();
                reports.push(report);
                out.push(BlockState {
                    comp,
                    b,
                    s,
                    reports,
                });
                continue;
            }
            let mut cols = ker.clone();
            for e in Matrix::<Const>::identity(nu).to_rows() {
                if !in_span(&cols, &e) {
                    cols.push(e);
                }
            }
            let dual = Matrix::from_cols(&cols)
                .inverse()
                .ok_or_else(|| Error::CheckFailed("kernel completion is singular".into()))?
                .transpose();
            let mut solver = ans.clone();
            solver.lc = ans.lc.try_map(|c| comp.apply(c)).ok_or_else(|| {
                Error::CheckFailed("right-hand side undefined on component".into())
            })?;
            let mut delta = vec![RatFunc::zero(); b.len()];
            for (l, dir) in ker.iter().enumerate() {
                let (mut f, hom) = solver.solve_for(dir).ok_or_else(|| {
                    Error::CheckFailed("no rational solution along a kernel direction".into())
                })?;
                for (h, hv) in hom.iter().enumerate() {
                    let p = Const::param(names.len());
                    let base = format!("c{}_{}_{}_{}", self.index + 1, k + 1, l + 1, h + 1);
                    let taken = names
                        .iter()
                        .filter(|n| n.split('b').next() == Some(base.as_str()))
                        .count();
                    names.push(if taken == 0 {
                        base
                    } else {
                        format!("{base}b{}", taken + 1)
                    });
                    for (fi, hi) in f.iter_mut().zip(hv) {
                        *fi = fi.add(&hi.scale(&p));
                    }
                }
                for j in 0..nu {
                    let w = dual.get(j, l);
                    if w.is_zero() {
                        continue;
                    }
                    for (i, fi) in f.iter().enumerate() {
                        if fi.is_zero() {
                            continue;
                        }
                        let coef = fi.scale(w);
                        for (dm, bv) in delta.iter_mut().zip(&lv.basis[j][i]) {
                            if !bv.is_zero() {
                                *dm = dm.add(&coef.scale(bv));
                            }
                        }
                    }
                }
                report.solutions.push(f);
            }
            let pd = self.psi.mul_vec(&delta);
            for ((sv, p), dv) in s.iter_mut().zip(&pd).zip(&delta) {
                *sv = sv.add(p).add(&dv.derivative());
            }
            add_into(&mut b, &delta);
            let anew = self.level_coords(k, &s);
            for dir in &ker {
                #[allow(clippy::needless_range_loop)]
                for i in 0..d {
                    let mut acc = RatFunc::zero();
                    for (j, cj) in dir.iter().enumerate() {
                        acc = acc.add(&anew[j][i].scale(cj));
                    }
                    if !acc.is_zero() {
                        return Err(Error::CheckFailed(format!(
                            "level {} not eliminated",
                            k + 1
                        )));
                    }
                }
            }
            let mut reports = st.reports.clone();
            reports.push(report);
            out.push(BlockState {
                comp,
                b,
                s,
                reports,
            });
        }
        Ok(out)
    }
}

/// Reduces `[[A₁, 0], [S, A₂]]` with reduced `A₁`, `A₂`; returns the parametric
/// record together with the gauge block and residue at the chosen point.
fn reduce_cut(
    a1: &Matrix<RatFunc>,
    a2: &Matrix<RatFunc>,
    s: &Matrix<RatFunc>,
    opts: &ReductionOptions,
) -> Result<(CutReduction, Matrix<RatFunc>, Matrix<RatFunc>)> {
    let (n1, n2) = (a1.rows(), a2.rows());
    let psi = build_psi_blocks(a1, a2);
    let n = psi.dim();
    let blocks = isotypical_decomposition_seeded(&psi.components, n, opts.seed)?;
    let flags = blocks
        .iter()
        .map(|b| build_isotypical_flag(b, &psi))
        .collect::<Result<Vec<_>>>()?;
    let mut cols: Vec<Vec<Const>> = Vec::with_capacity(n);
    let mut starts = Vec::new();
    for f in &flags {
        let mut st = Vec::new();
        for lv in &f.levels {
            st.push(cols.len());
            for copy in &lv.basis {
                cols.extend(copy.iter().cloned());
            }
        }
        starts.push(st);
    }
    let tinv = Matrix::from_cols(&cols)
        .inverse()
        .ok_or_else(|| Error::CheckFailed("adapted basis is singular".into()))?;
    let jobs: Vec<BlockJob> = flags
        .iter()
        .zip(starts)
        .enumerate()
        .map(|(index, (flag, starts))| BlockJob {
            index,
            flag,
            starts,
            tinv: &tinv,
            psi: &psi.psi,
            cap: opts.component_cap,
        })
        .collect();
    let s0 = vec_block(s);
    let outcomes: Vec<BlockOutcome> = if opts.parallel {
        jobs.par_iter().map(|j| j.run(&s0)).collect::<Result<_>>()?
    } else {
        jobs.iter().map(|j| j.run(&s0)).collect::<Result<_>>()?
    };

    let mut ledger = ParamLedger::default();
    let mut comp = Component::free();
    let mut alternatives: Vec<Vec<Component>> = Vec::new();
    let mut b = vec![RatFunc::zero(); n];
    let mut sr = s0.clone();
    let mut levels = Vec::new();
    let mut reports = Vec::new();
    for (out, flag) in outcomes.iter().zip(&flags) {
        let off = ledger.names.len();
        ledger.names.extend(out.names.iter().cloned());
        let st = &out.states[out.chosen];
        comp = comp.merge(&st.comp.shifted(off));
        alternatives.push(
            out.states
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != out.chosen)
                .map(|(_, s)| s.comp.shifted(off))
                .collect(),
        );
        let bw: Vec<RatFunc> = st.b.iter().map(|v| shift_rf(v, off)).collect();
        add_into(&mut b, &bw);
        for ((acc, v), orig) in sr.iter_mut().zip(&st.s).zip(&s0) {
            let dv = shift_rf(v, off).sub(orig);
            if !dv.is_zero() {
                *acc = acc.add(&dv);
            }
        }
        levels.extend(st.reports.iter().cloned());
        reports.push(BlockReport {
            dim: flag.block.dim(),
            multiplicity: flag.multiplicity(),
            level_dims: flag.level_dims(),
            residues: out.residues.clone(),
            chosen: out.chosen,
        });
    }
    ledger.components.push(comp.clone());
    for alt in alternatives.into_iter().flatten() {
        ledger.components.push(alt);
    }

    let mut vars = BTreeSet::new();
    for v in b.iter().chain(&sr) {
        vars.extend(v.vars());
    }
    let valid = |pt: &BTreeMap<usize, Q>| {
        let map = const_map(pt);
        b.iter().chain(&sr).all(|v| eval_at(v, &map).is_some())
    };
    let point = pick_point(&comp, &vars, &valid)?;
    let map = const_map(&point);
    let ev = |v: &Vec<RatFunc>| {
        v.iter()
            .map(|x| eval_at(x, &map))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NoRationalPointFound)
    };
    let b0 = unvec_block(&ev(&b)?, n2, n1);
    let s_red = unvec_block(&ev(&sr)?, n2, n1);
    let cut = CutReduction {
        offset: 0,
        n1,
        n2,
        gauge_sub: unvec_block(&b, n2, n1),
        reduced_sub: unvec_block(&sr, n2, n1),
        ledger,
        point,
        blocks: reports,
        levels,
    };
    Ok((cut, b0, s_red))
}

fn embed_gauge(n: usize, row: usize, col: usize, b: &Matrix<RatFunc>) -> Result<GaugeMatrix> {
    let mut p = Matrix::identity(n);
    p.set_block(row, col, b);
    GaugeMatrix::new(p)
}

/// Reduces a two-block system whose diagonal blocks are already reduced.
pub fn reduce_two_block(sys: &DiffSystem, opts: &ReductionOptions) -> Result<ReductionResult> {
    if sys.num_blocks() != 2 {
        return Err(Error::Contract(format!(
            "two-block reduction needs 2 blocks, got {}",
            sys.num_blocks()
        )));
    }
    let (a1, a2, s) = sys.cut_blocks(1)?;
    let (cut, b0, s_red) = reduce_cut(&a1, &a2, &s, opts)?;
    let p = GaugeMatrix::from_sub(cut.n1, &b0);
    let a_red = sys.gauge(&p)?;
    let mut expected = sys.matrix().clone();
    expected.set_block(cut.n1, 0, &s_red);
    if a_red.matrix() != &expected {
        return Err(Error::CheckFailed(
            "gauge result differs from the tracked residue".into(),
        ));
    }
    let lie_basis = lie_of_matrix(a_red.matrix())?;
    Ok(ReductionResult {
        p,
        a_red,
        lie_basis,
        ledger: cut.ledger.clone(),
        point: cut.point.clone(),
        cuts: vec![cut],
    })
}

/// Reduces a block-lower-triangular system with reduced diagonal blocks by
/// growing a reduced corner from the bottom right.
pub fn reduce_full(sys: &DiffSystem, opts: &ReductionOptions) -> Result<ReductionResult> {
    let k = sys.num_blocks();
    if k == 2 {
        return reduce_two_block(sys, opts);
    }
    let n = sys.dim();
    let offs = sys.offsets();
    let sizes = sys.partition().to_vec();
    let mut a = sys.matrix().clone();
    let mut p_total = GaugeMatrix::identity(n);
    let mut ledger = ParamLedger::default();
    let mut comp = Component::free();
    let mut point = BTreeMap::new();
    let mut cuts = Vec::new();
    for l in (0..k.saturating_sub(1)).rev() {
        let off = offs[l];
        let n1 = sizes[l];
        let n2 = n - off - n1;
        let a1 = a.submatrix(off, off, n1, n1);
        let a2 = a.submatrix(off + n1, off + n1, n2, n2);
        let s = a.submatrix(off + n1, off, n2, n1);
        let (mut cut, b0, s_red) = reduce_cut(&a1, &a2, &s, opts)?;
        cut.offset = off;
        let p = embed_gauge(n, off + n1, off, &b0)?;
        a = gauge_transform(&p, &a)?;
        if a.submatrix(off + n1, off, n2, n1) != s_red {
            return Err(Error::CheckFailed(
                "gauge result differs from the tracked residue".into(),
            ));
        }
        p_total = p.compose(&p_total);
        let shift = ledger.names.len();
        ledger
            .names
            .extend(cut.ledger.names.iter().map(|nm| format!("s{}_{nm}", l + 1)));
        if let Some(c) = cut.ledger.chosen() {
            comp = comp.merge(&c.shifted(shift));
        }
        point.extend(cut.point.iter().map(|(i, v)| (i + shift, v.clone())));
        cuts.push(cut);
    }
    ledger.components.push(comp);
    let a_red = DiffSystem::new(a, sizes)?;
    let lie_basis = lie_of_matrix(a_red.matrix())?;
    Ok(ReductionResult {
        p: p_total,
        a_red,
        lie_basis,
        ledger,
        point,
        cuts,
    })
}
