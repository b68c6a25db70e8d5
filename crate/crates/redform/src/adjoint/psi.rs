use crate::diffsys::{wei_norman, DiffSystem};
use crate::field::{Const, Matrix, RatFunc, Ring};
use crate::Result;

/// Adjoint action `Ψ(B) = B·A₁ − A₂·B` on lower-left blocks `B` (size `n₂×n₁`),
/// vectorized row by row: `vec(B)[r·n₁ + c] = B[r][c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiAction {
    pub n1: usize,
    pub n2: usize,
    pub psi: Matrix<RatFunc>,
    /// Constant components `Ψᵢ` with `Ψ = Σ gᵢ·Ψᵢ`.
    pub components: Vec<Matrix<Const>>,
    pub coeffs: Vec<RatFunc>,
}

impl PsiAction {
    pub fn dim(&self) -> usize {
        self.n1 * self.n2
    }

    /// `Ψ` applied to a constant vector, as a vector over `Q(x)`.
    pub fn apply(&self, v: &[Const]) -> Vec<RatFunc> {
        let vr: Vec<RatFunc> = v.iter().map(|c| RatFunc::constant(c.clone())).collect();
        self.psi.mul_vec(&vr)
    }
}

/// Row-major vectorization of an `n₂×n₁` block.
pub fn vec_block<T: Ring>(b: &Matrix<T>) -> Vec<T> {
    b.vec_rows()
}

pub fn unvec_block<T: Ring>(v: &[T], n2: usize, n1: usize) -> Matrix<T> {
    Matrix::from_vec_rows(n2, n1, v)
}

/// `Ψ = Id_{n₂}⊗A₁ᵀ − A₂⊗Id_{n₁}` in the row-major basis.
pub fn psi_matrix(a1: &Matrix<RatFunc>, a2: &Matrix<RatFunc>) -> Matrix<RatFunc> {
    let n1 = a1.rows();
    let n2 = a2.rows();
    Matrix::<RatFunc>::identity(n2)
        .kron(&a1.transpose())
        .sub(&a2.kron(&Matrix::identity(n1)))
}

/// Builds `Ψ` and its Wei-Norman components from the diagonal blocks.
pub fn build_psi_blocks(a1: &Matrix<RatFunc>, a2: &Matrix<RatFunc>) -> PsiAction {
    let psi = psi_matrix(a1, a2);
    let wn = wei_norman(&psi);
    PsiAction {
        n1: a1.rows(),
        n2: a2.rows(),
        psi,
        components: wn.gens,
        coeffs: wn.coeffs,
    }
}

/// `Ψ` for the two-block cut of a system (the `S` block is ignored).
pub fn build_psi(a: &DiffSystem, cut: usize) -> Result<PsiAction> {
    let (a1, a2, _) = a.cut_blocks(cut)?;
    Ok(build_psi_blocks(&a1, &a2))
}
