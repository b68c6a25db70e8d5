use super::module::{hom_space, invertible_hom, irreducible_submodule, IsotypicalBlock};
use super::psi::PsiAction;
use super::subspace::{ConstSubspace, Quotient};
use crate::field::{Const, Matrix, RatFunc};
use crate::{Error, Result};

/// One level `W^[k]` of an isotypical flag.
#[derive(Clone, Debug)]
pub struct FlagLevel {
    /// `W^[k]` itself.
    pub space: ConstSubspace,
    /// Adapted basis: `basis[j][i]` is `B_{i,j}`, copy `j` of the `i`-th
    /// basis vector of the irreducible quotient piece.
    pub basis: Vec<Vec<Vec<Const>>>,
    /// Constant parts of `Λ`: the restrictions of each `Ψᵢ` to the piece.
    pub lambda_components: Vec<Matrix<Const>>,
    /// `Λ = Σ gᵢ·Λᵢ`, with `Ψ(B_{i,j}) ≡ Σ_l Λ_{l,i}·B_{l,j}` modulo the level below.
    pub lambda: Matrix<RatFunc>,
}

impl FlagLevel {
    /// Dimension of the irreducible piece.
    pub fn piece_dim(&self) -> usize {
        self.lambda_components
            .first()
            .map(|m| m.rows())
            .unwrap_or_else(|| self.basis.first().map_or(0, |b| b.len()))
    }

    pub fn copies(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of `W^[k]/W^[k−1]`.
    pub fn quotient_dim(&self) -> usize {
        self.piece_dim() * self.copies()
    }
}

/// Flag `0 = W^[0] ⊊ W^[1] ⊊ … ⊊ W^[μ] = W` of an isotypical block.
#[derive(Clone, Debug)]
pub struct IsotypicalFlag {
    pub block: ConstSubspace,
    pub pieces: Vec<ConstSubspace>,
    /// `φ_j : V₁ → V_j` in the coordinates of the pieces.
    pub isomorphisms: Vec<Matrix<Const>>,
    /// `levels[k−1]` describes `W^[k]`.
    pub levels: Vec<FlagLevel>,
}

impl IsotypicalFlag {
    pub fn multiplicity(&self) -> usize {
        self.pieces.len()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level_dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.quotient_dim()).collect()
    }
}

fn lambda_of(comps: &[Matrix<Const>], coeffs: &[RatFunc], s: usize) -> Matrix<RatFunc> {
    let mut acc = Matrix::<RatFunc>::zeros(s, s);
    for (m, g) in comps.iter().zip(coeffs) {
        acc = acc.add(&m.map(|c| g.scale(c)));
    }
    acc
}

/// Builds the flag of one isotypical block.
pub fn build_isotypical_flag(block: &IsotypicalBlock, psi: &PsiAction) -> Result<IsotypicalFlag> {
    let gens = &psi.components;
    let w = &block.space;
    let n = w.ambient();
    let mut prev = ConstSubspace::zero(n);
    let mut levels = Vec::new();
    while prev.dim() < w.dim() {
        let q = Quotient::new(w, &prev, gens);
        let qd = q.dim();
        let top = irreducible_submodule(&ConstSubspace::full(qd), &q.actions)?;
        let s = top.dim();
        let comps = top.restrict(&q.actions);
        let homs = hom_space(&comps, &q.actions, s, qd);
        let ubasis = top.matrix();
        let mut images = ConstSubspace::zero(qd);
        let mut chosen: Vec<Matrix<Const>> = vec![ubasis.clone()];
        images = images.sum(&ConstSubspace::new(qd, &ubasis.to_cols()));
        for h in &homs {
            let img = ConstSubspace::new(qd, &h.to_cols());
            if img.dim() == 0 || images.contains_space(&img) {
                continue;
            }
            if img.dim() != s {
                return Err(Error::CheckFailed(
                    "intertwiner from an irreducible is not injective".into(),
                ));
            }
            images = images.sum(&img);
            chosen.push(h.clone());
        }
        let basis: Vec<Vec<Vec<Const>>> = chosen
            .iter()
            .map(|l| l.to_cols().iter().map(|c| q.lift(c)).collect())
            .collect();
        let mut next = prev.clone();
        for copy in &basis {
            next = next.sum(&ConstSubspace::new(n, copy));
        }
        if next.dim() != prev.dim() + s * chosen.len() {
            return Err(Error::CheckFailed(
                "flag level is not a direct sum of copies".into(),
            ));
        }
        levels.push(FlagLevel {
            space: next.clone(),
            basis,
            lambda: lambda_of(&comps, &psi.coeffs, s),
            lambda_components: comps,
        });
        prev = next;
    }
    let first = &block.pieces[0];
    let r1 = first.restrict(gens);
    let mut isomorphisms = Vec::new();
    for (j, p) in block.pieces.iter().enumerate() {
        if j == 0 {
            isomorphisms.push(Matrix::identity(first.dim()));
            continue;
        }
        let homs = hom_space(&r1, &p.restrict(gens), first.dim(), p.dim());
        let phi = invertible_hom(&homs, j as u64).ok_or_else(|| {
            Error::CheckFailed("pieces of an isotypical block are not isomorphic".into())
        })?;
        isomorphisms.push(phi);
    }
    Ok(IsotypicalFlag {
        block: w.clone(),
        pieces: block.pieces.clone(),
        isomorphisms,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::module::isotypical_decomposition;
    use crate::adjoint::psi::build_psi_blocks;
    use crate::field::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s, "x", &[]).unwrap()
    }

    #[test]
    fn jordan_chain_has_one_dimensional_levels() {
        // A₁ = [[0]], A₂ = [[0,1,0],[0,0,1],[0,0,0]]·x, Ψ(B) = −A₂·B.
        let a1 = Matrix::from_rows(vec![vec![rf("0")]]);
        let a2 = Matrix::from_rows(vec![
            vec![rf("0"), rf("x"), rf("0")],
            vec![rf("0"), rf("0"), rf("x")],
            vec![rf("0"), rf("0"), rf("0")],
        ]);
        let psi = build_psi_blocks(&a1, &a2);
        let blocks = isotypical_decomposition(&psi.components, psi.dim()).unwrap();
        assert_eq!(blocks.len(), 1);
        let flag = build_isotypical_flag(&blocks[0], &psi).unwrap();
        assert_eq!(flag.level_dims(), vec![1, 1, 1]);
        for l in &flag.levels {
            assert!(l.space.is_stable(&psi.components));
            assert!(l.lambda.is_zero());
        }
    }

    #[test]
    fn semisimple_block_has_one_level() {
        let a1 = Matrix::from_rows(vec![vec![rf("0")]]);
        let a2 = Matrix::from_rows(vec![vec![rf("x"), rf("0")], vec![rf("0"), rf("x")]]);
        let psi = build_psi_blocks(&a1, &a2);
        let blocks = isotypical_decomposition(&psi.components, psi.dim()).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].multiplicity(), 2);
        let flag = build_isotypical_flag(&blocks[0], &psi).unwrap();
        assert_eq!(flag.depth(), 1);
        assert_eq!(flag.levels[0].copies(), 2);
        assert_eq!(
            flag.levels[0].lambda,
            Matrix::from_rows(vec![vec![rf("-x")]])
        );
    }
}
