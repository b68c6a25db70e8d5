//! Commands behind the `redform` binary: each takes a parsed document and
//! returns a serializable report.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adjoint::{
    build_isotypical_flag, build_psi, eigenring, isotypical_decomposition_seeded,
};
use crate::diffsys::DiffSystem;
use crate::doc::{format_matrix, SystemDocument};
use crate::field::{Const, Matrix, RatFunc};
use crate::groupgen::{dense_generators, DenseGeneratorSet};
use crate::lie::{lie_of_matrix, LieBasis};
use crate::ratsol::{rational_solutions_parametrized, verify};
use crate::reduction::{reduce_full, ReductionOptions, ReductionResult};
use crate::{Error, Result};

/// Flags shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOptions {
    /// Re-verify results (plug-back, gauge identity, bracket closure).
    pub check: bool,
    pub component_cap: usize,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for CommandOptions {
    fn default() -> Self {
        let r = ReductionOptions::default();
        CommandOptions {
            check: false,
            component_cap: r.component_cap,
            seed: r.seed,
            parallel: r.parallel,
        }
    }
}

impl CommandOptions {
    fn reduction(&self) -> ReductionOptions {
        ReductionOptions {
            component_cap: self.component_cap,
            seed: self.seed,
            parallel: self.parallel,
        }
    }
}

/// Process exit code for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Contract(_) | Error::Parse { .. } => 2,
        Error::AlgebraicExtensionRequired(_) => 3,
        Error::ComponentExplosion(_) => 4,
        _ => 1,
    }
}

type Rows = Vec<Vec<String>>;

fn const_rows(m: &Matrix<Const>) -> Rows {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect()
}

fn rf_rows(m: &Matrix<RatFunc>, var: &str) -> Rows {
    format_matrix(m, var, &[])
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &Rows) -> fmt::Result {
    let width = rows
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    for r in rows {
        let cells: Vec<String> = r.iter().map(|s| format!("{s:>width$}")).collect();
        writeln!(f, "  [ {} ]", cells.join("  "))?;
    }
    Ok(())
}

fn basis_rows(l: &LieBasis) -> Vec<Rows> {
    l.basis.iter().map(const_rows).collect()
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(what.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub block: usize,
    pub level: usize,
    pub piece_dim: usize,
    pub copies: usize,
    pub rank: usize,
    pub components: usize,
    pub removed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutSummary {
    pub offset: usize,
    pub n1: usize,
    pub n2: usize,
    pub block_dims: Vec<usize>,
    pub levels: Vec<LevelSummary>,
    pub parameters: Vec<String>,
    pub components: usize,
    /// Values chosen for the free parameters, as `name = value`.
    pub point: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub a_red: SystemDocument,
    /// Gauge matrix with `A_red = P·A·P⁻¹ + P′·P⁻¹`.
    pub p: Rows,
    pub p_inverse: Rows,
    pub lie_dim: usize,
    pub lie_basis: Vec<Rows>,
    pub cuts: Vec<CutSummary>,
}

fn summarize_cuts(r: &ReductionResult) -> Vec<CutSummary> {
    r.cuts
        .iter()
        .map(|c| CutSummary {
            offset: c.offset,
            n1: c.n1,
            n2: c.n2,
            block_dims: c.blocks.iter().map(|b| b.dim).collect(),
            levels: c
                .levels
                .iter()
                .map(|l| LevelSummary {
                    block: l.block,
                    level: l.level,
                    piece_dim: l.piece_dim,
                    copies: l.copies,
                    rank: l.rank,
                    components: l.components,
                    removed: l.removed(),
                })
                .collect(),
            parameters: c.ledger.names.clone(),
            components: c.ledger.components.len(),
            point: c
                .point
                .iter()
                .map(|(k, v)| format!("{} = {}", c.ledger.names[*k], Const::rat(v.clone())))
                .collect(),
        })
        .collect()
}

/// Reduces a system whose diagonal blocks are declared reduced.
pub fn cmd_reduce(doc: &SystemDocument, opts: &CommandOptions) -> Result<ReduceReport> {
    if !doc.diagonal_reduced {
        return Err(Error::Contract(
            "reduction requires \"diagonal_reduced\": true (diagonal blocks are not verified)"
                .into(),
        ));
    }
    let sys = doc.to_system()?;
    let r = reduce_full(&sys, &opts.reduction())?;
    if opts.check {
        check(sys.gauge(&r.p)? == r.a_red, "P[A] = A_red")?;
        check(r.lie_basis.is_closed(), "Lie basis closed under brackets")?;
        let own = lie_of_matrix(r.a_red.matrix())?;
        check(own.same_span(&r.lie_basis), "Lie basis is Lie(A_red)")?;
    }
    let mut a_red = SystemDocument::from_system(&r.a_red, &doc.var, &[]);
    a_red.diagonal_reduced = true;
    Ok(ReduceReport {
        a_red,
        p: rf_rows(r.p.matrix(), &doc.var),
        p_inverse: rf_rows(r.p.inverse(), &doc.var),
        lie_dim: r.lie_basis.dim(),
        lie_basis: basis_rows(&r.lie_basis),
        cuts: summarize_cuts(&r),
    })
}

impl fmt::Display for ReduceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reduced system (blocks {:?}):", self.a_red.blocks)?;
        write_rows(f, &self.a_red.matrix)?;
        writeln!(f, "gauge P:")?;
        write_rows(f, &self.p)?;
        writeln!(f, "P^-1:")?;
        write_rows(f, &self.p_inverse)?;
        for c in &self.cuts {
            writeln!(
                f,
                "cut at {} ({} | {}): isotypical blocks {:?}, {} component(s)",
                c.offset, c.n1, c.n2, c.block_dims, c.components
            )?;
            for l in &c.levels {
                writeln!(
                    f,
                    "  block {} level {}: {} copies of dim {}, rank {}, {} minimal component(s), removed {}",
                    l.block + 1,
                    l.level,
                    l.copies,
                    l.piece_dim,
                    l.rank,
                    l.components,
                    l.removed
                )?;
            }
            if !c.point.is_empty() {
                writeln!(f, "  point: {}", c.point.join(", "))?;
            }
        }
        writeln!(f, "Lie algebra dimension: {}", self.lie_dim)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieReport {
    pub dim: usize,
    pub basis: Vec<Rows>,
}

/// Lie algebra of the Galois group of `Y' = A·Y` with `A` taken as given.
pub fn cmd_lie(doc: &SystemDocument, opts: &CommandOptions) -> Result<LieReport> {
    let lie = lie_of_matrix(&doc.to_matrix()?)?;
    if opts.check {
        check(lie.is_closed(), "Lie basis closed under brackets")?;
    }
    Ok(LieReport {
        dim: lie.dim(),
        basis: basis_rows(&lie),
    })
}

impl fmt::Display for LieReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.basis.iter().enumerate() {
            writeln!(f, "B{}:", i + 1)?;
            write_rows(f, b)?;
        }
        writeln!(f, "dimension: {}", self.dim)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiReport {
    pub psi: Rows,
    pub components: Vec<Rows>,
    pub eigenring_dim: usize,
    pub block_dims: Vec<usize>,
    /// Dimensions of `W^[k] / W^[k-1]` for each isotypical block.
    pub level_dims: Vec<Vec<usize>>,
}

/// The action `Ψ(B) = B·A₁ − A₂·B` of a two-block system and its module structure.
pub fn cmd_psi(doc: &SystemDocument, opts: &CommandOptions) -> Result<PsiReport> {
    if doc.blocks.len() != 2 {
        return Err(Error::Contract(format!(
            "psi needs exactly two blocks, got {}",
            doc.blocks.len()
        )));
    }
    let sys = doc.to_system()?;
    let psi = build_psi(&sys, 1)?;
    let n = psi.dim();
    let blocks = isotypical_decomposition_seeded(&psi.components, n, opts.seed)?;
    let mut level_dims = Vec::new();
    for b in &blocks {
        let flag = build_isotypical_flag(b, &psi)?;
        if opts.check {
            for l in &flag.levels {
                check(l.space.is_stable(&psi.components), "flag level is stable")?;
            }
        }
        level_dims.push(flag.level_dims());
    }
    Ok(PsiReport {
        psi: rf_rows(&psi.psi, &doc.var),
        components: psi.components.iter().map(const_rows).collect(),
        eigenring_dim: eigenring(&psi.components, n).dim(),
        block_dims: blocks.iter().map(|b| b.space.dim()).collect(),
        level_dims,
    })
}

impl fmt::Display for PsiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Psi:")?;
        write_rows(f, &self.psi)?;
        writeln!(f, "constant components: {}", self.components.len())?;
        writeln!(f, "eigenring dimension: {}", self.eigenring_dim)?;
        writeln!(f, "isotypical blocks: {:?}", self.block_dims)?;
        for (i, l) in self.level_dims.iter().enumerate() {
            writeln!(f, "  block {} levels: {:?}", i + 1, l)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionEntry {
    pub f: Vec<String>,
    pub c: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatsolReport {
    pub dim: usize,
    pub solutions: Vec<SolutionEntry>,
}

/// Rational solutions `(F, c)` of `F' = A·F + Σ cⱼ·bⱼ` with `bⱼ` the `rhs` columns.
pub fn cmd_ratsol(doc: &SystemDocument, opts: &CommandOptions) -> Result<RatsolReport> {
    let lam = doc.to_matrix()?;
    let rhs = doc.rhs_columns()?;
    let space = rational_solutions_parametrized(&lam, &rhs)?;
    if opts.check {
        for s in &space.basis {
            check(verify(&lam, &rhs, s), "rational solution plug-back")?;
        }
    }
    let names = |i: usize| format!("t{}", i + 1);
    Ok(RatsolReport {
        dim: space.dim(),
        solutions: space
            .basis
            .iter()
            .map(|s| SolutionEntry {
                f: s.f.iter().map(|v| v.fmt_in(&doc.var, &names)).collect(),
                c: s.c.iter().map(|v| v.to_string()).collect(),
            })
            .collect(),
    })
}

impl fmt::Display for RatsolReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "solution space dimension: {}", self.dim)?;
        for (i, s) in self.solutions.iter().enumerate() {
            write!(f, "  F{} = ({})", i + 1, s.f.join(", "))?;
            if s.c.is_empty() {
                writeln!(f)?;
            } else {
                writeln!(f, ", c = ({})", s.c.join(", "))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusEntry {
    pub basis: Rows,
    pub exponents: Vec<String>,
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnipotentEntry {
    pub param: String,
    pub nilpotent: Rows,
    pub matrix: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub lie_dim: usize,
    pub tori: Vec<TorusEntry>,
    pub unipotent: Vec<UnipotentEntry>,
}

/// Generators of a dense subgroup of the connected group with Lie algebra `Lie(A)`.
pub fn cmd_generators(doc: &SystemDocument, opts: &CommandOptions) -> Result<GeneratorsReport> {
    let lie = lie_of_matrix(&doc.to_matrix()?)?;
    let g = dense_generators(&lie)?;
    if opts.check {
        check(unipotent_laws_hold(&g)?, "one-parameter group law")?;
    }
    Ok(GeneratorsReport {
        lie_dim: lie.dim(),
        tori: g
            .tori
            .iter()
            .map(|t| TorusEntry {
                basis: const_rows(&t.basis),
                exponents: t
                    .exponents
                    .iter()
                    .map(|e| Const::rat(e.clone()).to_string())
                    .collect(),
                relations: t
                    .relations
                    .iter()
                    .map(|r| r.iter().map(|v| v.to_string()).collect())
                    .collect(),
            })
            .collect(),
        unipotent: g
            .unipotent
            .iter()
            .map(|u| UnipotentEntry {
                param: DenseGeneratorSet::param_name(u.param),
                nilpotent: const_rows(&u.nilpotent),
                matrix: const_rows(&u.matrix),
            })
            .collect(),
    })
}

fn unipotent_laws_hold(g: &DenseGeneratorSet) -> Result<bool> {
    use crate::field::Ring;
    use crate::groupgen::exp_nilpotent;
    let s = Const::param(g.unipotent.iter().map(|u| u.param + 1).max().unwrap_or(0));
    for u in &g.unipotent {
        let t = Const::param(u.param);
        let lhs = u.matrix.mul(&exp_nilpotent(&u.nilpotent, &s)?);
        if lhs != exp_nilpotent(&u.nilpotent, &t.add(&s))? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for GeneratorsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Lie algebra dimension: {}", self.lie_dim)?;
        for (i, t) in self.tori.iter().enumerate() {
            writeln!(f, "torus {}: Diag(a) in the basis", i + 1)?;
            write_rows(f, &t.basis)?;
            writeln!(f, "  exponents: ({})", t.exponents.join(", "))?;
            for r in &t.relations {
                writeln!(
                    f,
                    "  relation: prod a_i^e_i = 1 with e = ({})",
                    r.join(", ")
                )?;
            }
        }
        for u in &self.unipotent {
            writeln!(f, "unipotent family in {}:", u.param)?;
            write_rows(f, &u.matrix)?;
        }
        Ok(())
    }
}

/// The reduced system of a report as a [`DiffSystem`].
pub fn reduced_system(r: &ReduceReport) -> Result<DiffSystem> {
    r.a_red.to_system()
}
